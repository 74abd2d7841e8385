#include "catdesc/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace catdesc {
namespace {

// Hom-set sizes of a k-object category, row-major; diagonal entries count
// the identity.
struct Shape {
  std::size_t objects = 0;
  std::vector<std::size_t> hom_sizes;
};

std::string morphism_label(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "m" + std::to_string(i);
}

// Composition-table search state for a fixed shape. Morphisms are laid out
// block by block (x, y) in row-major order, identity first in diagonal
// blocks.
class TableSearch {
 public:
  explicit TableSearch(const Shape& shape) : k_(shape.objects) {
    homs_.assign(k_ * k_, {});
    identity_.assign(k_, kNone);
    for (ObjId x = 0; x < k_; ++x) {
      for (ObjId y = 0; y < k_; ++y) {
        for (std::size_t i = 0; i < shape.hom_sizes[x * k_ + y]; ++i) {
          const MorId m = static_cast<MorId>(src_.size());
          src_.push_back(x);
          tgt_.push_back(y);
          homs_[x * k_ + y].push_back(m);
          if (x == y && i == 0) identity_[x] = m;
        }
      }
    }
    n_ = src_.size();
    table_.assign(n_ * n_, kNone);
    for (MorId f = 0; f < n_; ++f) {
      table_[identity_[tgt_[f]] * n_ + f] = f;
      table_[f * n_ + identity_[src_[f]]] = f;
    }
    for (MorId g = 0; g < n_; ++g) {
      for (MorId f = 0; f < n_; ++f) {
        if (src_[g] == tgt_[f] && table_[g * n_ + f] == kNone) {
          pairs_.push_back({g, f});
        }
      }
    }
  }

  // Calls visit on every associative completion; visit returns false to
  // stop. `order` permutes candidate lists (identity for exhaustive runs).
  template <class Visit, class Order>
  bool search(Visit&& visit, Order&& order, std::size_t& budget) {
    return step(0, visit, order, budget);
  }

  FinCategory build() const {
    FinCategory::Builder b;
    for (ObjId x = 0; x < k_; ++x) b.add_object(std::to_string(x));
    std::size_t letter = 0;
    for (MorId m = 0; m < n_; ++m) {
      const bool is_id = identity_[src_[m]] == m;
      b.add_morphism(is_id ? "id" + std::to_string(src_[m])
                           : morphism_label(letter++),
                     src_[m], tgt_[m]);
    }
    for (ObjId x = 0; x < k_; ++x) b.set_identity(x, identity_[x]);
    for (MorId g = 0; g < n_; ++g) {
      for (MorId f = 0; f < n_; ++f) {
        if (table_[g * n_ + f] != kNone) {
          b.set_composite(g, f, table_[g * n_ + f]);
        }
      }
    }
    return std::move(b).build(Validation::Full);
  }

 private:
  MorId at(MorId g, MorId f) const { return table_[g * n_ + f]; }

  // Associativity on every triple whose entries are already known.
  bool consistent() const {
    for (MorId f = 0; f < n_; ++f) {
      for (MorId g = 0; g < n_; ++g) {
        if (src_[g] != tgt_[f]) continue;
        const MorId gf = at(g, f);
        for (MorId h = 0; h < n_; ++h) {
          if (src_[h] != tgt_[g]) continue;
          const MorId hg = at(h, g);
          if (gf == kNone || hg == kNone) continue;
          const MorId left = at(hg, f);
          const MorId right = at(h, gf);
          if (left != kNone && right != kNone && left != right) return false;
        }
      }
    }
    return true;
  }

  template <class Visit, class Order>
  bool step(std::size_t i, Visit& visit, Order& order, std::size_t& budget) {
    if (budget == 0) return false;
    --budget;
    if (i == pairs_.size()) return visit(*this);
    const auto [g, f] = pairs_[i];
    std::vector<MorId> candidates = homs_[src_[f] * k_ + tgt_[g]];
    order(candidates);
    for (MorId r : candidates) {
      table_[g * n_ + f] = r;
      if (consistent() && !step(i + 1, visit, order, budget)) {
        table_[g * n_ + f] = kNone;
        return false;
      }
    }
    table_[g * n_ + f] = kNone;
    return true;
  }

  std::size_t k_;
  std::size_t n_ = 0;
  std::vector<ObjId> src_, tgt_;
  std::vector<MorId> identity_;
  std::vector<std::vector<MorId>> homs_;
  std::vector<MorId> table_;
  std::vector<std::pair<MorId, MorId>> pairs_;
};

void for_each_shape(std::size_t k, std::size_t max_morphisms,
                    const std::function<void(const Shape&)>& visit) {
  Shape s;
  s.objects = k;
  s.hom_sizes.assign(k * k, 0);
  auto rec = [&](auto&& self, std::size_t cell, std::size_t used) -> void {
    if (cell == k * k) {
      visit(s);
      return;
    }
    const bool diagonal = cell / k == cell % k;
    for (std::size_t h = diagonal ? 1 : 0; used + h <= max_morphisms; ++h) {
      // Remaining diagonal cells each need one identity.
      std::size_t pending = 0;
      for (std::size_t c = cell + 1; c < k * k; ++c) {
        if (c / k == c % k) ++pending;
      }
      if (used + h + pending > max_morphisms) break;
      s.hom_sizes[cell] = h;
      self(self, cell + 1, used + h);
    }
    s.hom_sizes[cell] = 0;
  };
  rec(rec, 0, 0);
}

}  // namespace

std::string canonical_form(const FinCategory& c) {
  const std::size_t k = c.num_objects();
  const std::size_t n = c.num_morphisms();
  std::vector<ObjId> perm(k);
  std::iota(perm.begin(), perm.end(), ObjId{0});
  std::vector<std::uint32_t> best;
  bool have_best = false;

  do {
    // perm[new] = old. Non-identity morphisms of each new block, in some
    // order; the block orders are permuted independently.
    std::vector<std::vector<MorId>> blocks(k * k);
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = 0; y < k; ++y) {
        for (MorId m : c.hom(perm[x], perm[y])) {
          if (!c.is_identity(m)) blocks[x * k + y].push_back(m);
        }
      }
    }
    auto encode = [&]() {
      std::vector<MorId> relabel(n, kNone);
      std::uint32_t next = 0;
      for (std::size_t x = 0; x < k; ++x) {
        for (std::size_t y = 0; y < k; ++y) {
          if (x == y) relabel[c.identity(perm[x])] = next++;
          for (MorId m : blocks[x * k + y]) relabel[m] = next++;
        }
      }
      std::vector<MorId> order(n);
      for (MorId m = 0; m < n; ++m) order[relabel[m]] = m;
      std::vector<std::uint32_t> code{static_cast<std::uint32_t>(k)};
      for (const auto& b : blocks) {
        code.push_back(static_cast<std::uint32_t>(b.size()));
      }
      for (MorId g : order) {
        for (MorId f : order) {
          if (c.source(g) == c.target(f)) {
            code.push_back(relabel[c.compose(g, f)]);
          }
        }
      }
      if (!have_best || code < best) {
        best = std::move(code);
        have_best = true;
      }
    };
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    auto rec = [&](auto&& self, std::size_t cell) -> void {
      if (cell == blocks.size()) {
        encode();
        return;
      }
      auto& b = blocks[cell];
      std::sort(b.begin(), b.end());
      do {
        self(self, cell + 1);
      } while (std::next_permutation(b.begin(), b.end()));
    };
    rec(rec, 0);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::string out;
  for (std::size_t i = 0; i < best.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(best[i]);
  }
  return out;
}

std::vector<CategoryPtr> enumerate_categories(std::size_t max_objects,
                                              std::size_t max_morphisms) {
  struct Key {
    std::size_t objects, morphisms;
    std::string canon;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, CategoryPtr> found;
  for (std::size_t k = 0; k <= max_objects; ++k) {
    if (k > max_morphisms) break;
    for_each_shape(k, max_morphisms, [&](const Shape& shape) {
      TableSearch search(shape);
      std::size_t budget = static_cast<std::size_t>(-1);
      search.search(
          [&](const TableSearch& s) {
            FinCategory c = s.build();
            Key key{c.num_objects(), c.num_morphisms(), canonical_form(c)};
            if (!found.contains(key)) found.emplace(key, share(std::move(c)));
            return true;
          },
          [](std::vector<MorId>&) {}, budget);
    });
  }
  std::vector<CategoryPtr> out;
  out.reserve(found.size());
  for (auto& [key, c] : found) out.push_back(c);
  return out;
}

namespace {

// Backtracking over morphism maps for a fixed object map.
template <class Order>
bool extend_functor(const FinCategory& e, const FinCategory& b,
                    const std::vector<ObjId>& objects,
                    std::vector<MorId>& morphisms, MorId next, Order& order,
                    const std::function<bool(std::vector<MorId>&)>& done) {
  const std::size_t n = e.num_morphisms();
  while (next < n && e.is_identity(next)) ++next;
  if (next == n) return done(morphisms);
  std::vector<MorId> candidates(
      b.hom(objects[e.source(next)], objects[e.target(next)]).begin(),
      b.hom(objects[e.source(next)], objects[e.target(next)]).end());
  order(candidates);
  for (MorId image : candidates) {
    morphisms[next] = image;
    bool ok = true;
    // Composition constraints among assigned morphisms involving `next`.
    for (MorId f = 0; f < n && ok; ++f) {
      if (morphisms[f] == kNone) continue;
      for (MorId g = 0; g < n && ok; ++g) {
        if (morphisms[g] == kNone || e.source(g) != e.target(f)) continue;
        const MorId gf = e.compose(g, f);
        if (f != next && g != next && gf != next) continue;
        if (morphisms[gf] == kNone) continue;
        ok = morphisms[gf] == b.compose(morphisms[g], morphisms[f]);
      }
    }
    if (ok &&
        !extend_functor(e, b, objects, morphisms, next + 1, order, done)) {
      morphisms[next] = kNone;
      return false;
    }
  }
  morphisms[next] = kNone;
  return true;
}

}  // namespace

void for_each_functor(const CategoryPtr& domain, const CategoryPtr& codomain,
                      const std::function<bool(const FinFunctor&)>& visit) {
  const FinCategory& e = *domain;
  const FinCategory& b = *codomain;
  const std::size_t k = e.num_objects();
  if (k > 0 && b.num_objects() == 0) return;
  std::vector<ObjId> objects(k, 0);
  auto no_order = [](std::vector<MorId>&) {};
  while (true) {
    std::vector<MorId> morphisms(e.num_morphisms(), kNone);
    for (ObjId x = 0; x < k; ++x) {
      morphisms[e.identity(x)] = b.identity(objects[x]);
    }
    const bool go_on = extend_functor(
        e, b, objects, morphisms, 0, no_order, [&](std::vector<MorId>& m) {
          // Every composite was checked during the search.
          return visit(FinFunctor::unchecked(domain, codomain, objects, m));
        });
    if (!go_on) return;
    // Next object map in lexicographic order (last position fastest).
    std::size_t i = k;
    while (i > 0 && objects[i - 1] + 1 == b.num_objects()) {
      objects[i - 1] = 0;
      --i;
    }
    if (i == 0) return;
    ++objects[i - 1];
  }
}

std::vector<FinFunctor> all_functors(const CategoryPtr& domain,
                                     const CategoryPtr& codomain) {
  std::vector<FinFunctor> out;
  for_each_functor(domain, codomain, [&](const FinFunctor& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

CategoryPtr random_category(std::mt19937_64& rng, std::size_t max_objects,
                            std::size_t max_morphisms) {
  max_objects = std::max<std::size_t>(1, std::min(max_objects, max_morphisms));
  while (true) {
    Shape shape;
    shape.objects =
        std::uniform_int_distribution<std::size_t>(1, max_objects)(rng);
    const std::size_t k = shape.objects;
    const std::size_t total =
        std::uniform_int_distribution<std::size_t>(k, max_morphisms)(rng);
    shape.hom_sizes.assign(k * k, 0);
    for (std::size_t x = 0; x < k; ++x) shape.hom_sizes[x * k + x] = 1;
    std::uniform_int_distribution<std::size_t> cell(0, k * k - 1);
    for (std::size_t i = k; i < total; ++i) ++shape.hom_sizes[cell(rng)];

    TableSearch search(shape);
    std::size_t budget = 20000;
    std::optional<FinCategory> result;
    search.search(
        [&](const TableSearch& s) {
          result = s.build();
          return false;
        },
        [&](std::vector<MorId>& c) { std::shuffle(c.begin(), c.end(), rng); },
        budget);
    if (result) return share(std::move(*result));
  }
}

std::optional<FinFunctor> random_functor(std::mt19937_64& rng,
                                         const CategoryPtr& domain,
                                         const CategoryPtr& codomain) {
  const FinCategory& e = *domain;
  const FinCategory& b = *codomain;
  const std::size_t k = e.num_objects();
  if (k > 0 && b.num_objects() == 0) return std::nullopt;
  // All object maps, tried in random order.
  std::size_t count = 1;
  for (std::size_t i = 0; i < k; ++i) count *= b.num_objects();
  std::vector<std::size_t> codes(count);
  std::iota(codes.begin(), codes.end(), std::size_t{0});
  std::shuffle(codes.begin(), codes.end(), rng);
  auto shuffle = [&](std::vector<MorId>& c) {
    std::shuffle(c.begin(), c.end(), rng);
  };
  for (std::size_t code : codes) {
    std::vector<ObjId> objects(k);
    for (std::size_t i = 0; i < k; ++i) {
      objects[i] = static_cast<ObjId>(code % b.num_objects());
      code /= b.num_objects();
    }
    std::vector<MorId> morphisms(e.num_morphisms(), kNone);
    for (ObjId x = 0; x < k; ++x) {
      morphisms[e.identity(x)] = b.identity(objects[x]);
    }
    std::optional<FinFunctor> result;
    extend_functor(e, b, objects, morphisms, 0, shuffle,
                   [&](std::vector<MorId>& m) {
                     result.emplace(domain, codomain, objects, m);
                     return false;
                   });
    if (result) return result;
  }
  return std::nullopt;
}

}  // namespace catdesc

namespace catdesc {

std::vector<Automorphism> automorphisms(const FinCategory& c) {
  const std::size_t k = c.num_objects();
  const std::size_t n = c.num_morphisms();
  std::vector<Automorphism> out;
  std::vector<ObjId> perm(k);
  std::iota(perm.begin(), perm.end(), ObjId{0});
  do {
    bool shapes_match = true;
    for (ObjId x = 0; x < k && shapes_match; ++x) {
      for (ObjId y = 0; y < k && shapes_match; ++y) {
        shapes_match = c.hom(x, y).size() == c.hom(perm[x], perm[y]).size();
      }
    }
    if (!shapes_match) continue;
    std::vector<MorId> map(n, kNone);
    for (ObjId x = 0; x < k; ++x) map[c.identity(x)] = c.identity(perm[x]);
    // Target orderings of non-identity morphisms, block by block.
    std::vector<std::vector<MorId>> sources(k * k), targets(k * k);
    for (ObjId x = 0; x < k; ++x) {
      for (ObjId y = 0; y < k; ++y) {
        for (MorId m : c.hom(x, y)) {
          if (!c.is_identity(m)) sources[x * k + y].push_back(m);
        }
        for (MorId m : c.hom(perm[x], perm[y])) {
          if (!c.is_identity(m)) targets[x * k + y].push_back(m);
        }
      }
    }
    auto rec = [&](auto&& self, std::size_t cell) -> void {
      if (cell == k * k) {
        for (MorId g = 0; g < n; ++g) {
          for (MorId f = 0; f < n; ++f) {
            if (c.source(g) == c.target(f) &&
                map[c.compose(g, f)] != c.compose(map[g], map[f])) {
              return;
            }
          }
        }
        out.push_back({perm, map});
        return;
      }
      auto& t = targets[cell];
      do {
        for (std::size_t i = 0; i < t.size(); ++i) map[sources[cell][i]] = t[i];
        self(self, cell + 1);
      } while (std::next_permutation(t.begin(), t.end()));
    };
    rec(rec, 0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

bool is_orbit_representative(const FinFunctor& f,
                             const std::vector<Automorphism>& domain_autos,
                             const std::vector<Automorphism>& codomain_autos) {
  const std::size_t k = f.domain().num_objects();
  const std::size_t n = f.domain().num_morphisms();
  std::vector<ObjId> objects(k);
  std::vector<MorId> morphisms(n);
  for (const auto& alpha : domain_autos) {
    for (const auto& beta : codomain_autos) {
      // (β f α⁻¹)(α x) = β(f x)
      for (ObjId x = 0; x < k; ++x) {
        objects[alpha.objects[x]] = beta.objects[f(x)];
      }
      for (MorId m = 0; m < n; ++m) {
        morphisms[alpha.morphisms[m]] = beta.morphisms[f.map(m)];
      }
      if (std::tie(objects, morphisms) <
          std::tie(f.object_map(), f.morphism_map())) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace catdesc
