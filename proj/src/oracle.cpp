#include "catdesc/oracle.hpp"

#include <map>
#include <numeric>

#include "catdesc/kernel.hpp"
#include "catdesc/union_find.hpp"

namespace catdesc {
namespace {

using Table = std::vector<std::uint32_t>;

// Calls visit on every function {0..m-1} → {0..k-1} (or every bijection),
// in lexicographic order. visit returning false stops.
template <class Visit>
bool for_each_function(std::uint32_t m, std::uint32_t k, bool bijective,
                       Visit&& visit) {
  if (bijective && m != k) return true;
  Table t(m, 0);
  if (m == 0) return visit(t);
  if (k == 0) return true;
  while (true) {
    bool ok = true;
    if (bijective) {
      std::vector<bool> seen(k, false);
      for (auto v : t) {
        if (seen[v]) {
          ok = false;
          break;
        }
        seen[v] = true;
      }
    }
    if (ok && !visit(t)) return false;
    std::size_t i = m;
    while (i > 0 && t[i - 1] + 1 == k) t[--i] = 0;
    if (i == 0) return true;
    ++t[i - 1];
  }
}

Table identity_table(std::uint32_t n) {
  Table t(n);
  std::iota(t.begin(), t.end(), 0u);
  return t;
}

std::string table_string(const Table& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + "]";
}

[[noreturn]] void over_cap(std::size_t cap, const std::string& what) {
  throw Error(ErrorKind::ResourceExceeded,
              "cap " + std::to_string(cap) + " reached enumerating " + what);
}

// Restriction of h along p, with identity sigma.
BoundedDescentDatum comparison_image(const FinFunctor& p,
                                     const KernelPairDiagram& d,
                                     const BoundedPresheaf& h) {
  BoundedDescentDatum out;
  out.presheaf.category = p.domain_ptr();
  out.pairs = d.x1;
  for (ObjId a = 0; a < p.domain().num_objects(); ++a) {
    out.presheaf.sizes.push_back(h.sizes[p(a)]);
  }
  for (MorId m = 0; m < p.domain().num_morphisms(); ++m) {
    out.presheaf.action.push_back(h.action[p.map(m)]);
  }
  for (ObjId alpha = 0; alpha < d.x1->num_objects(); ++alpha) {
    out.sigma.push_back(identity_table(h.sizes[p(d.d1(alpha))]));
  }
  return out;
}

// Transformations f → g that commute with sigma.
std::vector<Transformation> datum_morphisms(const KernelPairDiagram& d,
                                            const BoundedDescentDatum& f,
                                            const BoundedDescentDatum& g,
                                            bool bijective, std::size_t cap) {
  std::vector<Transformation> out;
  for (auto& phi :
       natural_transformations(f.presheaf, g.presheaf, bijective, cap)) {
    bool ok = true;
    for (ObjId alpha = 0; alpha < d.x1->num_objects() && ok; ++alpha) {
      const ObjId u = d.d1(alpha);
      const ObjId v = d.d0(alpha);
      for (std::uint32_t i = 0; i < f.presheaf.sizes[u] && ok; ++i) {
        ok = g.sigma[alpha][phi[u][i]] == phi[v][f.sigma[alpha][i]];
      }
    }
    if (ok) out.push_back(std::move(phi));
  }
  return out;
}

}  // namespace

CheckResult check_presheaf(const BoundedPresheaf& f) {
  const FinCategory& c = *f.category;
  if (f.sizes.size() != c.num_objects() ||
      f.action.size() != c.num_morphisms()) {
    return CheckResult::fail("presheaf shape does not match its category");
  }
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    const auto& t = f.action[m];
    if (t.size() != f.sizes[c.source(m)]) {
      return CheckResult::fail("table of " + c.morphism_name(m) +
                               " has the wrong length");
    }
    for (auto v : t) {
      if (v >= f.sizes[c.target(m)]) {
        return CheckResult::fail("table of " + c.morphism_name(m) +
                                 " leaves its target");
      }
    }
    if (c.is_identity(m) && t != identity_table(f.sizes[c.source(m)])) {
      return CheckResult::fail(c.morphism_name(m) +
                               " is not sent to an identity");
    }
  }
  for (MorId g = 0; g < c.num_morphisms(); ++g) {
    for (MorId f2 = 0; f2 < c.num_morphisms(); ++f2) {
      if (c.target(f2) != c.source(g)) continue;
      const auto& gf = f.action[c.compose(g, f2)];
      for (std::uint32_t i = 0; i < f.sizes[c.source(f2)]; ++i) {
        if (gf[i] != f.action[g][f.action[f2][i]]) {
          return CheckResult::fail("composite " + c.morphism_name(g) + " o " +
                                   c.morphism_name(f2) + " not preserved");
        }
      }
    }
  }
  return CheckResult::pass();
}

std::string describe(const BoundedPresheaf& f) {
  const FinCategory& c = *f.category;
  std::string out = "{";
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    if (x) out += ", ";
    out += c.object_name(x) + ":" + std::to_string(f.sizes[x]);
  }
  bool first = true;
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    out += first ? " | " : ", ";
    first = false;
    out += c.morphism_name(m) + "=" + table_string(f.action[m]);
  }
  return out + "}";
}

std::string describe(const Transformation& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += table_string(t[i]);
  }
  return out + ")";
}

std::string describe(const BoundedDescentDatum& d) {
  std::string out = describe(d.presheaf) + " sigma{";
  bool first = true;
  for (ObjId alpha = 0; alpha < d.sigma.size(); ++alpha) {
    if (!first) out += ", ";
    first = false;
    out += d.pairs->object_name(alpha) + "=" + table_string(d.sigma[alpha]);
  }
  return out + "}";
}

void for_each_presheaf(const CategoryPtr& cp, std::size_t n,
                       const std::function<bool(const BoundedPresheaf&)>& visit,
                       std::size_t cap) {
  const FinCategory& c = *cp;
  std::vector<MorId> gens;
  std::vector<std::size_t> position(c.num_morphisms(), kNone);
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    if (!c.is_identity(m)) {
      position[m] = gens.size();
      gens.push_back(m);
    }
  }
  // Composites g∘f of non-identities, checked once all three are assigned.
  std::vector<std::vector<std::array<MorId, 3>>> checks(gens.size());
  for (MorId f : gens) {
    for (MorId g : gens) {
      if (c.source(g) != c.target(f)) continue;
      const MorId gf = c.compose(g, f);
      std::size_t key = std::max(position[f], position[g]);
      if (!c.is_identity(gf)) key = std::max(key, position[gf]);
      checks[key].push_back({g, f, gf});
    }
  }

  std::size_t count = 0;
  BoundedPresheaf f{cp, std::vector<std::uint32_t>(c.num_objects(), 0),
                    std::vector<Table>(c.num_morphisms())};
  bool stopped = false;

  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == gens.size()) {
      if (++count > cap) over_cap(cap, "presheaves");
      return visit(f);
    }
    const MorId m = gens[i];
    return for_each_function(
        f.sizes[c.source(m)], f.sizes[c.target(m)], false,
        [&](const Table& t) {
          f.action[m] = t;
          for (const auto& [g, h, gh] : checks[i]) {
            const auto& lhs = f.action[gh];
            for (std::uint32_t s = 0; s < f.sizes[c.source(h)]; ++s) {
              if (lhs[s] != f.action[g][f.action[h][s]]) return true;
            }
          }
          return assign(i + 1);
        });
  };

  const std::size_t k = c.num_objects();
  while (!stopped) {
    for (ObjId x = 0; x < k; ++x) {
      f.action[c.identity(x)] = identity_table(f.sizes[x]);
    }
    if (!assign(0)) return;
    std::size_t i = k;
    while (i > 0 && f.sizes[i - 1] == n) f.sizes[--i] = 0;
    if (i == 0) stopped = true;
    else ++f.sizes[i - 1];
  }
}

std::vector<BoundedPresheaf> enumerate_presheaves(const CategoryPtr& c,
                                                  std::size_t n,
                                                  std::size_t cap) {
  std::vector<BoundedPresheaf> out;
  for_each_presheaf(
      c, n,
      [&](const BoundedPresheaf& f) {
        out.push_back(f);
        return true;
      },
      cap);
  return out;
}

std::vector<Transformation> natural_transformations(const BoundedPresheaf& f,
                                                    const BoundedPresheaf& g,
                                                    bool bijective,
                                                    std::size_t cap) {
  const FinCategory& c = *f.category;
  const std::size_t k = c.num_objects();
  std::vector<std::vector<MorId>> checks(k);
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    checks[std::max(c.source(m), c.target(m))].push_back(m);
  }
  std::vector<Transformation> out;
  Transformation t(k);
  std::function<bool(ObjId)> assign = [&](ObjId x) -> bool {
    if (x == k) {
      if (out.size() >= cap) over_cap(cap, "natural transformations");
      out.push_back(t);
      return true;
    }
    return for_each_function(f.sizes[x], g.sizes[x], bijective,
                             [&](const Table& component) {
                               t[x] = component;
                               for (MorId m : checks[x]) {
                                 const ObjId a = c.source(m);
                                 const ObjId b = c.target(m);
                                 for (std::uint32_t s = 0; s < f.sizes[a]; ++s) {
                                   if (t[b][f.action[m][s]] !=
                                       g.action[m][t[a][s]]) {
                                     return true;
                                   }
                                 }
                               }
                               return assign(x + 1);
                             });
  };
  assign(0);
  return out;
}

LeftKanExtension::LeftKanExtension(const FinFunctor& p,
                                   const BoundedPresheaf& f)
    : p_(p), source_sizes_(f.sizes) {
  const FinCategory& e = p.domain();
  const FinCategory& b = p.codomain();
  value_.category = p.codomain_ptr();
  value_.sizes.assign(b.num_objects(), 0);
  value_.action.assign(b.num_morphisms(), {});
  offsets_.assign(b.num_objects(), {});
  classes_.assign(b.num_objects(), {});
  representative_.assign(b.num_objects(), {});

  for (ObjId y = 0; y < b.num_objects(); ++y) {
    auto& offset = offsets_[y];
    offset.assign(e.num_objects() + 1, 0);
    for (ObjId a = 0; a < e.num_objects(); ++a) {
      offset[a + 1] = offset[a] + b.hom(p(a), y).size() * f.sizes[a];
    }
    auto raw = [&](ObjId a, MorId u, std::uint32_t s) {
      return offset[a] + b.hom_position(u) * f.sizes[a] + s;
    };
    UnionFind uf(offset.back());
    for (MorId w = 0; w < e.num_morphisms(); ++w) {
      if (e.is_identity(w)) continue;
      const ObjId a = e.source(w);
      const ObjId a2 = e.target(w);
      for (MorId u : b.hom(p(a2), y)) {
        for (std::uint32_t s = 0; s < f.sizes[a]; ++s) {
          uf.unite(raw(a, b.compose(u, p.map(w)), s),
                   raw(a2, u, f.action[w][s]));
        }
      }
    }
    auto& cls = classes_[y];
    cls.assign(offset.back(), 0);
    for (ObjId a = 0; a < e.num_objects(); ++a) {
      for (MorId u : b.hom(p(a), y)) {
        for (std::uint32_t s = 0; s < f.sizes[a]; ++s) {
          const std::size_t i = raw(a, u, s);
          const std::size_t root = uf.find(i);
          if (root == i) {
            cls[i] = static_cast<std::uint32_t>(representative_[y].size());
            representative_[y].push_back({a, u, s});
          } else {
            cls[i] = cls[root];
          }
        }
      }
    }
    value_.sizes[y] = static_cast<std::uint32_t>(representative_[y].size());
  }
  for (MorId g = 0; g < b.num_morphisms(); ++g) {
    const ObjId y = b.source(g);
    const ObjId y2 = b.target(g);
    for (const Element& r : representative_[y]) {
      value_.action[g].push_back(class_of(y2, r.a, b.compose(g, r.u), r.s));
    }
  }
  if (auto ok = check_presheaf(value_); !ok) {
    throw Error(ErrorKind::ConsistencyViolation,
                "left Kan extension is not a functor: " + ok.witness);
  }
}

std::uint32_t LeftKanExtension::class_of(ObjId y, ObjId a, MorId u,
                                         std::uint32_t s) const {
  return classes_[y][offsets_[y][a] +
                     p_.codomain().hom_position(u) * source_sizes_[a] + s];
}

Transformation LeftKanExtension::map(const Transformation& alpha,
                                     const LeftKanExtension& target) const {
  Transformation out(value_.sizes.size());
  for (ObjId y = 0; y < out.size(); ++y) {
    for (const Element& r : representative_[y]) {
      out[y].push_back(target.class_of(y, r.a, r.u, alpha[r.a][r.s]));
    }
  }
  return out;
}

BoundedPresheaf oracle_lan(const FinFunctor& p, const BoundedPresheaf& f) {
  return LeftKanExtension(p, f).value();
}

Verdict<bool> oracle_lan_ff_probe(const FinFunctor& p, std::size_t n,
                                  std::size_t cap) {
  try {
    const auto presheaves = enumerate_presheaves(p.domain_ptr(), n, cap);
    std::vector<LeftKanExtension> lans;
    for (const auto& f : presheaves) lans.emplace_back(p, f);
    for (std::size_t i = 0; i < presheaves.size(); ++i) {
      for (std::size_t j = 0; j < presheaves.size(); ++j) {
        const std::string pair =
            " for F = " + describe(presheaves[i]) + ", G = " +
            describe(presheaves[j]);
        std::map<Transformation, std::size_t> image;
        const auto nats =
            natural_transformations(presheaves[i], presheaves[j], false, cap);
        for (std::size_t k = 0; k < nats.size(); ++k) {
          auto [it, fresh] = image.emplace(lans[i].map(nats[k], lans[j]), k);
          if (!fresh) {
            return Verdict<bool>::no(
                "Lan_p is not faithful: " + describe(nats[it->second]) +
                " and " + describe(nats[k]) + " have the same extension" +
                pair);
          }
        }
        for (const auto& t : natural_transformations(
                 lans[i].value(), lans[j].value(), false, cap)) {
          if (!image.contains(t)) {
            return Verdict<bool>::no("Lan_p is not full: " + describe(t) +
                                     " : Lan F -> Lan G is not an extension" +
                                     pair);
          }
        }
      }
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ResourceExceeded) throw;
    return Verdict<bool>::undecided(e.what());
  }
  return Verdict<bool>::yes(true);
}

DescentOracleResult oracle_descent_category(const FinFunctor& p,
                                            const OracleOptions& options) {
  const KernelPairDiagram d = higher_kernel(p);
  const FinCategory& x1 = *d.x1;
  const FinCategory& x2 = *d.x2;
  const std::size_t pairs = x1.num_objects();

  // Constraints on sigma, checked once every pair involved is assigned.
  std::vector<std::vector<MorId>> naturality(pairs);
  for (MorId mu = 0; mu < x1.num_morphisms(); ++mu) {
    if (x1.is_identity(mu)) continue;
    naturality[std::max(x1.source(mu), x1.target(mu))].push_back(mu);
  }
  std::vector<std::vector<std::array<ObjId, 3>>> cocycle(pairs);
  for (ObjId gamma = 0; gamma < x2.num_objects(); ++gamma) {
    const ObjId uw = d.faces[1](gamma);
    const ObjId vw = d.faces[0](gamma);
    const ObjId uv = d.faces[2](gamma);
    cocycle[std::max({uw, vw, uv})].push_back({uw, vw, uv});
  }

  DescentOracleResult result;
  std::size_t count = 0;
  for_each_presheaf(
      p.domain_ptr(), options.bound,
      [&](const BoundedPresheaf& f) {
        BoundedDescentDatum datum{f, d.x1, std::vector<Table>(pairs)};
        auto& sigma = datum.sigma;
        auto satisfied = [&](ObjId alpha) {
          for (MorId mu : naturality[alpha]) {
            const ObjId a = x1.source(mu);
            const ObjId b = x1.target(mu);
            const auto& ff = f.action[d.d1.map(mu)];
            const auto& gg = f.action[d.d0.map(mu)];
            for (std::uint32_t i = 0; i < f.sizes[d.d1(a)]; ++i) {
              if (sigma[b][ff[i]] != gg[sigma[a][i]]) return false;
            }
          }
          for (const auto& [uw, vw, uv] : cocycle[alpha]) {
            for (std::uint32_t i = 0; i < f.sizes[d.d1(uw)]; ++i) {
              if (sigma[uw][i] != sigma[vw][sigma[uv][i]]) return false;
            }
          }
          return true;
        };
        std::function<void(ObjId)> assign = [&](ObjId alpha) {
          if (alpha == pairs) {
            if (++count > options.cap) over_cap(options.cap, "descent data");
            result.data.push_back(datum);
            return;
          }
          const ObjId u = d.d1(alpha);
          const ObjId v = d.d0(alpha);
          if (d.s0(u) == alpha) {
            sigma[alpha] = identity_table(f.sizes[u]);
            if (satisfied(alpha)) assign(alpha + 1);
            return;
          }
          for_each_function(f.sizes[u], f.sizes[v],
                            options.require_invertible_sigma,
                            [&](const Table& t) {
                              sigma[alpha] = t;
                              if (satisfied(alpha)) assign(alpha + 1);
                              return true;
                            });
        };
        assign(0);
        return true;
      },
      options.cap);

  result.codomain_presheaves =
      enumerate_presheaves(p.codomain_ptr(), options.bound, options.cap);
  std::vector<BoundedDescentDatum> images;
  for (const auto& h : result.codomain_presheaves) {
    images.push_back(comparison_image(p, d, h));
  }

  const auto& hs = result.codomain_presheaves;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = 0; j < hs.size(); ++j) {
      const std::string pair =
          " for H = " + describe(hs[i]) + ", H' = " + describe(hs[j]);
      std::map<Transformation, std::size_t> restricted;
      const auto nats = natural_transformations(hs[i], hs[j], false,
                                                options.cap);
      for (std::size_t k = 0; k < nats.size(); ++k) {
        Transformation r;
        for (ObjId a = 0; a < p.domain().num_objects(); ++a) {
          r.push_back(nats[k][p(a)]);
        }
        auto [it, fresh] = restricted.emplace(std::move(r), k);
        if (!fresh && result.comparison_faithful.ok) {
          result.comparison_faithful = CheckResult::fail(
              describe(nats[it->second]) + " and " + describe(nats[k]) +
              " restrict to the same morphism of data" + pair);
        }
      }
      if (!result.comparison_full.ok) continue;
      for (const auto& t :
           datum_morphisms(d, images[i], images[j], false, options.cap)) {
        if (!restricted.contains(t)) {
          result.comparison_full = CheckResult::fail(
              "morphism of data " + describe(t) +
              " is not a restriction" + pair);
          break;
        }
      }
    }
  }

  for (std::size_t k = 0; k < result.data.size(); ++k) {
    const auto& datum = result.data[k];
    bool matched = false;
    for (std::size_t i = 0; i < images.size() && !matched; ++i) {
      if (images[i].presheaf.sizes != datum.presheaf.sizes) continue;
      matched = !datum_morphisms(d, images[i], datum, true, options.cap).empty();
    }
    if (!matched) result.unmatched.push_back(k);
  }
  return result;
}

Verdict<bool> oracle_consistency(const FinFunctor& p, const DescentReport& r,
                                 const OracleOptions& options) {
  try {
    const DescentOracleResult o = oracle_descent_category(p, options);
    if (r.descent_set && !o.comparison_faithful.ok) {
      return Verdict<bool>::no(
          "descent verdict true but the bounded comparison is not faithful: " +
          o.comparison_faithful.witness);
    }
    if (r.descent_set && !o.comparison_full.ok) {
      return Verdict<bool>::no(
          "descent verdict true but the bounded comparison is not full: " +
          o.comparison_full.witness);
    }
    if (r.effective_descent_set.is_yes() && !o.unmatched.empty()) {
      return Verdict<bool>::no(
          "effective verdict Yes but datum " +
          describe(o.data[o.unmatched.front()]) +
          " is isomorphic to no comparison image");
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ResourceExceeded) throw;
    return Verdict<bool>::undecided(e.what());
  }
  return Verdict<bool>::yes(true);
}

void attach_oracle(DescentReport& r, const FinFunctor& p,
                   const OracleOptions& options) {
  r.oracle_bound = options.bound;
  r.oracle_lan_ff = oracle_lan_ff_probe(p, options.bound, options.cap);
  if (r.oracle_lan_ff->is_no() && r.fully_faithful.ok) {
    throw Error(ErrorKind::ConsistencyViolation,
                "p is fully faithful but Lan_p is not: " +
                    r.oracle_lan_ff->witness());
  }
  r.oracle_consistency = oracle_consistency(p, r, options);
  if (r.oracle_consistency->is_no()) {
    throw Error(ErrorKind::ConsistencyViolation,
                r.oracle_consistency->witness());
  }
}

}  // namespace catdesc
