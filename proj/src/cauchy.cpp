#include "catdesc/cauchy.hpp"

namespace catdesc {

MorId KaroubiEnvelope::morphism_of(ObjId from, ObjId to, MorId f) const {
  for (MorId m : completion->hom(from, to)) {
    if (underlying[m] == f) return m;
  }
  return kNone;
}

KaroubiEnvelope karoubi_envelope(const CategoryPtr& c) {
  const FinCategory& base = *c;
  const std::size_t n = base.num_morphisms();
  FinCategory::Builder b;
  std::vector<std::pair<ObjId, MorId>> split;
  std::vector<ObjId> object_index(n, kNone);
  std::vector<std::string> names;
  for (ObjId x = 0; x < base.num_objects(); ++x) {
    for (MorId m : base.hom(x, x)) {
      if (!base.is_idempotent(m)) continue;
      names.push_back("(" + base.object_name(x) + ";" + base.morphism_name(m) +
                      ")");
      object_index[m] = b.add_object(names.back());
      split.emplace_back(x, m);
    }
  }

  const std::size_t k = split.size();
  std::vector<MorId> underlying;
  std::vector<ObjId> from, to;
  std::vector<MorId> table(k * k * n, kNone);
  auto slot = [&](std::size_t a, std::size_t t, MorId f) -> MorId& {
    return table[(a * k + t) * n + f];
  };
  for (std::size_t a = 0; a < k; ++a) {
    const auto [x, m] = split[a];
    for (std::size_t t = 0; t < k; ++t) {
      const auto [y, e] = split[t];
      for (MorId f : base.hom(x, y)) {
        if (base.compose(e, f) != f || base.compose(f, m) != f) continue;
        slot(a, t, f) = b.add_morphism(
            base.morphism_name(f) + "@" + names[a] + "->" + names[t],
            static_cast<ObjId>(a), static_cast<ObjId>(t));
        underlying.push_back(f);
        from.push_back(static_cast<ObjId>(a));
        to.push_back(static_cast<ObjId>(t));
      }
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    b.set_identity(static_cast<ObjId>(a), slot(a, a, split[a].second));
  }
  for (MorId f = 0; f < underlying.size(); ++f) {
    for (MorId g = 0; g < underlying.size(); ++g) {
      if (from[g] != to[f]) continue;
      b.set_composite(g, f,
                      slot(from[f], to[g],
                           base.compose(underlying[g], underlying[f])));
    }
  }

  KaroubiEnvelope env{
      c,
      share(std::move(b).build(Validation::Structural)),
      identity_functor(c),
      std::move(split),
      std::move(underlying),
      std::move(object_index),
  };
  std::vector<ObjId> objects;
  for (ObjId x = 0; x < base.num_objects(); ++x) {
    objects.push_back(env.object_index[base.identity(x)]);
  }
  std::vector<MorId> morphisms;
  for (MorId f = 0; f < n; ++f) {
    morphisms.push_back(slot(objects[base.source(f)], objects[base.target(f)], f));
  }
  env.unit = FinFunctor(c, env.completion, std::move(objects),
                        std::move(morphisms));
  return env;
}

FinFunctor cauchy_map(const FinFunctor& p, const KaroubiEnvelope& domain,
                      const KaroubiEnvelope& codomain) {
  std::vector<ObjId> objects;
  for (const auto& [x, m] : domain.split) {
    objects.push_back(codomain.object_of(p.map(m)));
  }
  std::vector<MorId> morphisms;
  const FinCategory& c = *domain.completion;
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    morphisms.push_back(codomain.morphism_of(objects[c.source(f)],
                                             objects[c.target(f)],
                                             p.map(domain.underlying[f])));
  }
  return FinFunctor(domain.completion, codomain.completion, std::move(objects),
                    std::move(morphisms));
}

FinFunctor cauchy_map(const FinFunctor& p) {
  return cauchy_map(p, karoubi_envelope(p.domain_ptr()),
                    karoubi_envelope(p.codomain_ptr()));
}

CheckResult check_idempotents_split(const FinCategory& c) {
  for (MorId g = 0; g < c.num_morphisms(); ++g) {
    if (!c.is_idempotent(g)) continue;
    const ObjId x = c.source(g);
    bool found = false;
    for (ObjId y = 0; y < c.num_objects() && !found; ++y) {
      for (MorId r : c.hom(x, y)) {
        for (MorId s : c.hom(y, x)) {
          if (c.compose(s, r) == g && c.compose(r, s) == c.identity(y)) {
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
    if (!found) {
      return CheckResult::fail("idempotent " + c.morphism_name(g) + " on " +
                               c.object_name(x) + " does not split");
    }
  }
  return CheckResult::pass();
}

bool is_cauchy_complete(const CategoryPtr& c) {
  return is_equivalence(karoubi_envelope(c).unit);
}

}  // namespace catdesc
