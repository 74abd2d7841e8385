#include "catdesc/codescent.hpp"

#include <set>

namespace catdesc {

MorId PresentedFunctor::evaluate(const Path& p) const {
  MorId result = codomain->identity(object_map.at(p.source));
  for (GenId g : p.steps) result = codomain->compose(generator_map.at(g), result);
  return result;
}

CheckResult check_respects_relations(const PresentedFunctor& k) {
  const Presentation& p = *k.domain;
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const Relation& r = p.relations[i];
    if (k.evaluate(r.lhs) != k.evaluate(r.rhs)) {
      return CheckResult::fail(
          "relation " + (r.label.empty() ? "#" + std::to_string(i) : r.label) +
          ": " + p.format(r.lhs) + " = " + p.format(r.rhs) + " maps to '" +
          k.codomain->morphism_name(k.evaluate(r.lhs)) + "' vs '" +
          k.codomain->morphism_name(k.evaluate(r.rhs)) + "'");
    }
  }
  return CheckResult::pass();
}

CodescentFactorization codescent_presentation(const KernelPairDiagram& d) {
  const FinCategory& e = *d.x0;
  const FinCategory& x1 = *d.x1;
  const FinCategory& x2 = *d.x2;

  auto pres = std::make_shared<Presentation>(presentation_of(e));
  for (auto& r : pres->relations) r.label = "composition " + r.label;
  const std::size_t composition_count = pres->relations.size();

  std::vector<GenId> edge(e.num_morphisms(), kNone);
  {
    GenId next = 0;
    for (MorId m = 0; m < e.num_morphisms(); ++m) {
      if (!e.is_identity(m)) edge[m] = next++;
    }
  }
  auto path_of = [&](MorId m) {
    return e.is_identity(m) ? Path{e.source(m), {}}
                            : Path{e.source(m), {edge[m]}};
  };

  std::vector<GenId> theta(x1.num_objects());
  for (ObjId a = 0; a < x1.num_objects(); ++a) {
    theta[a] = static_cast<GenId>(pres->generators.size());
    pres->generators.push_back(
        {"theta" + x1.object_name(a), d.d1(a), d.d0(a)});
  }

  // theta_beta after f  =  g after theta_alpha, for (f, g): alpha -> beta.
  for (MorId mu = 0; mu < x1.num_morphisms(); ++mu) {
    if (x1.is_identity(mu)) continue;
    const ObjId alpha = x1.source(mu);
    const ObjId beta = x1.target(mu);
    const MorId f = d.d1.map(mu);
    const MorId g = d.d0.map(mu);
    Path lhs = path_of(f);
    lhs.steps.push_back(theta[beta]);
    Path rhs = pres->then(Path{d.d1(alpha), {theta[alpha]}}, path_of(g));
    if (lhs == rhs) continue;
    pres->relations.push_back(
        {std::move(lhs), std::move(rhs), "naturality " + x1.morphism_name(mu)});
  }
  const std::size_t naturality_count =
      pres->relations.size() - composition_count;

  for (ObjId x = 0; x < e.num_objects(); ++x) {
    const ObjId diag = d.s0(x);
    pres->relations.push_back({Path{x, {theta[diag]}}, Path{x, {}},
                               "unit " + x1.object_name(diag)});
  }

  for (ObjId gamma = 0; gamma < x2.num_objects(); ++gamma) {
    const ObjId uw = d.faces[1](gamma);
    const ObjId vw = d.faces[0](gamma);
    const ObjId uv = d.faces[2](gamma);
    pres->relations.push_back({Path{d.d1(uw), {theta[uw]}},
                               Path{d.d1(uv), {theta[uv], theta[vw]}},
                               "cocycle " + x2.object_name(gamma)});
  }
  validate(*pres);

  CodescentFactorization out{d, pres, theta, {}, {}, {}};
  for (MorId m = 0; m < e.num_morphisms(); ++m) out.phi.push_back(path_of(m));

  PresentedFunctor k{pres, d.p.codomain_ptr(), d.p.object_map(), {}};
  for (MorId m = 0; m < e.num_morphisms(); ++m) {
    if (!e.is_identity(m)) k.generator_map.push_back(d.p.map(m));
  }
  for (ObjId a = 0; a < x1.num_objects(); ++a) {
    k.generator_map.push_back(d.p.codomain().identity(d.p(d.d1(a))));
  }
  out.comparison = std::move(k);
  out.relation_counts = {composition_count, naturality_count,
                         e.num_objects(), x2.num_objects()};
  return out;
}

CheckResult check_factorization(const CodescentFactorization& c) {
  if (auto r = check_respects_relations(c.comparison); !r) return r;

  const FinCategory& e = *c.diagram.x0;
  const FinFunctor& p = c.diagram.p;
  const Presentation& pres = *c.presentation;
  const PresentedFunctor& k = c.comparison;

  std::set<std::pair<std::vector<GenId>, std::vector<GenId>>> declared;
  for (const auto& r : pres.relations) {
    declared.emplace(r.lhs.steps, r.rhs.steps);
    declared.emplace(r.rhs.steps, r.lhs.steps);
  }
  for (MorId f = 0; f < e.num_morphisms(); ++f) {
    for (ObjId z = 0; z < e.num_objects(); ++z) {
      for (MorId g : e.hom(e.target(f), z)) {
        const Path composite = pres.then(c.phi[f], c.phi[g]);
        const Path& direct = c.phi[e.compose(g, f)];
        if (composite == direct ||
            declared.contains({composite.steps, direct.steps})) {
          continue;
        }
        return CheckResult::fail("Phi does not preserve " +
                                 e.morphism_name(g) + " o " +
                                 e.morphism_name(f) + ": no relation " +
                                 pres.format(composite) + " = " +
                                 pres.format(direct));
      }
    }
  }

  for (ObjId x = 0; x < e.num_objects(); ++x) {
    if (k.object_map.at(x) != p(x)) {
      return CheckResult::fail("K o Phi differs from p at object " +
                               e.object_name(x));
    }
  }
  for (MorId m = 0; m < e.num_morphisms(); ++m) {
    if (c.phi[m].source != e.source(m) ||
        pres.target(c.phi[m]) != e.target(m)) {
      return CheckResult::fail("Phi sends " + e.morphism_name(m) +
                               " to a path with wrong endpoints");
    }
    if (k.evaluate(c.phi[m]) != p.map(m)) {
      return CheckResult::fail("K o Phi differs from p at morphism " +
                               e.morphism_name(m));
    }
  }
  return CheckResult::pass();
}

Verdict<bool> comparison_ff(const CodescentFactorization& c,
                            const RewriteSystem& rewriting,
                            const Limits& limits) {
  if (!rewriting.complete()) return Verdict<bool>::undecided(rewriting.bound());
  const Presentation& pres = *c.presentation;
  const PresentedFunctor& k = c.comparison;
  const FinCategory& b = *k.codomain;
  std::optional<std::string> bound;
  std::vector<MorId> seen(b.num_morphisms(), kNone);
  for (ObjId x = 0; x < pres.nodes.size(); ++x) {
    auto homs = hom_sets_from(rewriting, x, limits);
    for (ObjId y = 0; y < pres.nodes.size(); ++y) {
      auto& h = homs[y];
      if (h.is_no()) return Verdict<bool>::no(h.witness());
      if (h.is_undecided()) {
        if (!bound) bound = h.bound();
        continue;
      }
      const auto target = b.hom(k.object_map[x], k.object_map[y]);
      const std::string where = "CoDesc(" + pres.nodes[x] + ", " +
                                pres.nodes[y] + ") -> b(" +
                                b.object_name(k.object_map[x]) + ", " +
                                b.object_name(k.object_map[y]) + ")";
      for (std::size_t i = 0; i < h.value().size(); ++i) {
        const Path& nf = h.value()[i];
        const MorId image = k.evaluate(nf);
        if (seen[image] != kNone) {
          return Verdict<bool>::no(
              where + " is not injective: " +
              pres.format(h.value()[seen[image]]) + " and " + pres.format(nf) +
              " both map to '" + b.morphism_name(image) + "'");
        }
        seen[image] = static_cast<MorId>(i);
      }
      for (const Path& nf : h.value()) seen[k.evaluate(nf)] = kNone;
      if (h.value().size() != target.size()) {
        return Verdict<bool>::no(where + " is not surjective: " +
                                 std::to_string(h.value().size()) +
                                 " classes for " +
                                 std::to_string(target.size()) + " morphisms");
      }
    }
  }
  if (bound) return Verdict<bool>::undecided(*bound);
  return Verdict<bool>::yes(true);
}

Verdict<bool> comparison_ff(const CodescentFactorization& c,
                            const Limits& limits) {
  return comparison_ff(c, complete_rewriting(c.presentation, limits), limits);
}

Verdict<FinitizedComparison> finitize_comparison(
    const CodescentFactorization& c, const RewriteSystem& rewriting,
    const Limits& limits) {
  auto fin = try_finitize(rewriting, limits);
  if (!fin.is_yes()) return fin.forward<FinitizedComparison>();
  const PresentedFunctor& k = c.comparison;
  std::vector<MorId> morphisms;
  for (const Path& nf : fin.value().normal_forms) {
    morphisms.push_back(k.evaluate(nf));
  }
  FinFunctor functor(fin.value().category, k.codomain, k.object_map,
                     std::move(morphisms));
  return Verdict<FinitizedComparison>::yes(
      FinitizedComparison{std::move(fin.value()), std::move(functor)});
}

}  // namespace catdesc
