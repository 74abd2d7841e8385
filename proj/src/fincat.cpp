#include "catdesc/fincat.hpp"

#include <algorithm>
#include <numeric>

#include "catdesc/union_find.hpp"

namespace catdesc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MissingIdentity: return "MissingIdentity";
    case ErrorKind::NonClosedComposition: return "NonClosedComposition";
    case ErrorKind::IdentityLawViolation: return "IdentityLawViolation";
    case ErrorKind::AssociativityViolation: return "AssociativityViolation";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::DuplicateIdentifier: return "DuplicateIdentifier";
    case ErrorKind::NotAFunctor: return "NotAFunctor";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::CodomainMismatch: return "CodomainMismatch";
    case ErrorKind::InvalidPresentation: return "InvalidPresentation";
    case ErrorKind::IncompleteSystem: return "IncompleteSystem";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ResourceExceeded: return "ResourceExceeded";
    case ErrorKind::ConsistencyViolation: return "ConsistencyViolation";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Builder

ObjId FinCategory::Builder::add_object(std::string name) {
  objects_.push_back(std::move(name));
  identities_.push_back(kNone);
  return static_cast<ObjId>(objects_.size() - 1);
}

MorId FinCategory::Builder::add_morphism(std::string name, ObjId source,
                                         ObjId target) {
  morphisms_.push_back({std::move(name), source, target});
  return static_cast<MorId>(morphisms_.size() - 1);
}

void FinCategory::Builder::set_identity(ObjId x, MorId m) {
  identities_.at(x) = m;
}

void FinCategory::Builder::set_composition_table(std::vector<MorId> table) {
  table_ = std::move(table);
}

void FinCategory::Builder::set_composite(MorId g, MorId f, MorId gf) {
  composites_.push_back({g, f, gf});
}

FinCategory FinCategory::Builder::build(Validation level) && {
  FinCategory c;
  c.objects_ = std::move(objects_);
  c.morphisms_ = std::move(morphisms_);
  c.identities_ = std::move(identities_);
  const std::size_t n = c.morphisms_.size();

  for (std::size_t i = 0; i < n; ++i) {
    const auto& m = c.morphisms_[i];
    if (m.source >= c.objects_.size() || m.target >= c.objects_.size()) {
      throw Error(ErrorKind::DanglingReference,
                  "morphism '" + m.name + "' has an undeclared endpoint");
    }
  }
  c.sort_names();
  for (std::size_t i = 1; i < c.object_order_.size(); ++i) {
    const auto& name = c.objects_[c.object_order_[i]];
    if (name == c.objects_[c.object_order_[i - 1]]) {
      throw Error(ErrorKind::DuplicateIdentifier,
                  "object '" + name + "' declared twice");
    }
  }
  for (std::size_t i = 1; i < c.morphism_order_.size(); ++i) {
    const auto& name = c.morphisms_[c.morphism_order_[i]].name;
    if (name == c.morphisms_[c.morphism_order_[i - 1]].name) {
      throw Error(ErrorKind::DuplicateIdentifier,
                  "morphism '" + name + "' declared twice");
    }
  }
  for (std::size_t x = 0; x < c.objects_.size(); ++x) {
    const MorId id = c.identities_[x];
    if (id == kNone) {
      throw Error(ErrorKind::MissingIdentity,
                  "object '" + c.objects_[x] + "' has no identity");
    }
    if (id >= n || c.morphisms_[id].source != x ||
        c.morphisms_[id].target != x) {
      throw Error(ErrorKind::MissingIdentity,
                  "identity of '" + c.objects_[x] +
                      "' is not an endomorphism of it");
    }
  }

  auto entry = [&](MorId g, MorId f, MorId gf) {
    return c.morphisms_[g].name + " o " + c.morphisms_[f].name + " = " +
           c.morphisms_[gf].name;
  };
  auto check_entry = [&](MorId g, MorId f, MorId gf) {
    if (g >= n || f >= n || gf >= n) {
      throw Error(ErrorKind::DanglingReference,
                  "composition entry references an undeclared morphism");
    }
    const auto& mg = c.morphisms_[g];
    const auto& mf = c.morphisms_[f];
    const auto& mgf = c.morphisms_[gf];
    if (mg.source != mf.target) {
      throw Error(ErrorKind::NonClosedComposition,
                  "entry for non-composable pair: " + entry(g, f, gf));
    }
    if (mgf.source != mf.source || mgf.target != mg.target) {
      throw Error(ErrorKind::NonClosedComposition,
                  "composite has wrong source/target: " + entry(g, f, gf));
    }
  };

  if (!table_.empty()) {
    if (table_.size() != n * n) {
      throw Error(ErrorKind::NonClosedComposition,
                  "composition table has the wrong size");
    }
    c.composition_ = std::move(table_);
    for (MorId g = 0; g < n; ++g) {
      for (MorId f = 0; f < n; ++f) {
        const MorId gf = c.composition_[static_cast<std::size_t>(g) * n + f];
        if (gf != kNone && level == Validation::Full) check_entry(g, f, gf);
      }
    }
  } else {
    c.composition_.assign(n * n, kNone);
  }
  for (const auto& [g, f, gf] : composites_) {
    check_entry(g, f, gf);
    MorId& slot = c.composition_[static_cast<std::size_t>(g) * n + f];
    if (slot != kNone && slot != gf) {
      throw Error(ErrorKind::NonClosedComposition,
                  "conflicting entries for " + c.morphisms_[g].name + " o " +
                      c.morphisms_[f].name);
    }
    slot = gf;
  }
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      if (c.morphisms_[g].source == c.morphisms_[f].target &&
          c.composition_[g * n + f] == kNone) {
        throw Error(ErrorKind::NonClosedComposition,
                    "missing composite " + c.morphisms_[g].name + " o " +
                        c.morphisms_[f].name);
      }
    }
  }

  c.index();
  CheckResult laws = level == Validation::Full ? check_category_laws(c)
                                               : CheckResult::pass();
  if (!laws) {
    const bool assoc = laws.witness.rfind("associativity", 0) == 0;
    throw Error(assoc ? ErrorKind::AssociativityViolation
                      : ErrorKind::IdentityLawViolation,
                laws.witness);
  }
  return c;
}

void FinCategory::sort_names() {
  object_order_.resize(objects_.size());
  std::iota(object_order_.begin(), object_order_.end(), ObjId{0});
  std::stable_sort(object_order_.begin(), object_order_.end(),
                   [&](ObjId x, ObjId y) { return objects_[x] < objects_[y]; });
  morphism_order_.resize(morphisms_.size());
  std::iota(morphism_order_.begin(), morphism_order_.end(), MorId{0});
  std::stable_sort(morphism_order_.begin(), morphism_order_.end(),
                   [&](MorId f, MorId g) {
                     return morphisms_[f].name < morphisms_[g].name;
                   });
}

void FinCategory::index() {
  const std::size_t k = objects_.size();
  const std::size_t n = morphisms_.size();
  hom_offset_.assign(k * k + 1, 0);
  for (const auto& m : morphisms_) ++hom_offset_[m.source * k + m.target + 1];
  for (std::size_t i = 0; i < k * k; ++i) hom_offset_[i + 1] += hom_offset_[i];
  hom_data_.assign(n, 0);
  hom_position_.assign(n, 0);
  std::vector<std::size_t> fill(hom_offset_.begin(), hom_offset_.end() - 1);
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t cell = morphisms_[m].source * k + morphisms_[m].target;
    hom_position_[m] = fill[cell] - hom_offset_[cell];
    hom_data_[fill[cell]++] = static_cast<MorId>(m);
  }

  UnionFind classes(k);
  for (ObjId x = 0; x < k; ++x) {
    for (ObjId y = x + 1; y < k; ++y) {
      if (!classes.same(x, y) && find_isomorphism(x, y)) classes.unite(x, y);
    }
  }
  iso_class_.resize(k);
  for (ObjId x = 0; x < k; ++x) {
    iso_class_[x] = static_cast<std::uint32_t>(classes.find(x));
  }
}

std::optional<std::pair<MorId, MorId>> FinCategory::find_isomorphism(
    ObjId x, ObjId y) const {
  if (x == y) return std::pair{identity(x), identity(x)};
  for (MorId f : hom(x, y)) {
    for (MorId g : hom(y, x)) {
      if (compose(g, f) == identity(x) && compose(f, g) == identity(y)) {
        return std::pair{f, g};
      }
    }
  }
  return std::nullopt;
}

std::optional<ObjId> FinCategory::find_object(std::string_view name) const {
  auto it = std::lower_bound(
      object_order_.begin(), object_order_.end(), name,
      [&](ObjId x, std::string_view n) { return objects_[x] < n; });
  if (it == object_order_.end() || objects_[*it] != name) return std::nullopt;
  return *it;
}

std::optional<MorId> FinCategory::find_morphism(std::string_view name) const {
  auto it = std::lower_bound(
      morphism_order_.begin(), morphism_order_.end(), name,
      [&](MorId f, std::string_view n) { return morphisms_[f].name < n; });
  if (it == morphism_order_.end() || morphisms_[*it].name != name) {
    return std::nullopt;
  }
  return *it;
}

RawCategory FinCategory::to_raw() const {
  RawCategory raw;
  raw.objects = objects_;
  for (const auto& m : morphisms_) {
    raw.morphisms.push_back({m.name, objects_[m.source], objects_[m.target]});
  }
  for (std::size_t x = 0; x < objects_.size(); ++x) {
    raw.identities[objects_[x]] = morphisms_[identities_[x]].name;
  }
  const std::size_t n = morphisms_.size();
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      const MorId gf = composition_[g * n + f];
      if (gf != kNone) {
        raw.composition.push_back(
            {morphisms_[g].name, morphisms_[f].name, morphisms_[gf].name});
      }
    }
  }
  return raw;
}

bool operator==(const FinCategory& a, const FinCategory& b) {
  if (&a == &b) return true;
  if (a.objects_ != b.objects_ || a.identities_ != b.identities_ ||
      a.composition_ != b.composition_ ||
      a.morphisms_.size() != b.morphisms_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.morphisms_.size(); ++i) {
    const auto& x = a.morphisms_[i];
    const auto& y = b.morphisms_[i];
    if (x.name != y.name || x.source != y.source || x.target != y.target) {
      return false;
    }
  }
  return true;
}

CheckResult check_category_laws(const FinCategory& c) {
  const std::size_t n = c.num_morphisms();
  for (MorId f = 0; f < n; ++f) {
    const ObjId s = c.source(f);
    const ObjId t = c.target(f);
    if (c.compose(c.identity(t), f) != f || c.compose(f, c.identity(s)) != f) {
      return CheckResult::fail("identity law fails for " + c.morphism_name(f));
    }
  }
  for (MorId f = 0; f < n; ++f) {
    for (MorId g = 0; g < n; ++g) {
      if (c.source(g) != c.target(f)) continue;
      const MorId gf = c.compose(g, f);
      for (MorId h = 0; h < n; ++h) {
        if (c.source(h) != c.target(g)) continue;
        if (c.compose(c.compose(h, g), f) != c.compose(h, gf)) {
          return CheckResult::fail("associativity fails for (" +
                                   c.morphism_name(h) + ", " +
                                   c.morphism_name(g) + ", " +
                                   c.morphism_name(f) + ")");
        }
      }
    }
  }
  return CheckResult::pass();
}

FinCategory validate_category(const RawCategory& raw) {
  FinCategory::Builder b;
  std::unordered_map<std::string, ObjId> objects;
  for (const auto& name : raw.objects) {
    if (!objects.emplace(name, b.add_object(name)).second) {
      throw Error(ErrorKind::DuplicateIdentifier,
                  "object '" + name + "' declared twice");
    }
  }
  auto object = [&](const std::string& name, const std::string& where) {
    auto it = objects.find(name);
    if (it == objects.end()) {
      throw Error(ErrorKind::DanglingReference,
                  "unknown object '" + name + "' in " + where);
    }
    return it->second;
  };
  std::unordered_map<std::string, MorId> morphisms;
  for (const auto& m : raw.morphisms) {
    const std::string where = "morphism '" + m.id + "'";
    const MorId id =
        b.add_morphism(m.id, object(m.src, where), object(m.tgt, where));
    if (!morphisms.emplace(m.id, id).second) {
      throw Error(ErrorKind::DuplicateIdentifier,
                  "morphism '" + m.id + "' declared twice");
    }
  }
  auto morphism = [&](const std::string& name, const std::string& where) {
    auto it = morphisms.find(name);
    if (it == morphisms.end()) {
      throw Error(ErrorKind::DanglingReference,
                  "unknown morphism '" + name + "' in " + where);
    }
    return it->second;
  };
  for (const auto& [obj, mor] : raw.identities) {
    b.set_identity(object(obj, "identities"), morphism(mor, "identities"));
  }
  for (const auto& [g, f, gf] : raw.composition) {
    const std::string where = "composition [" + g + ", " + f + ", " + gf + "]";
    b.set_composite(morphism(g, where), morphism(f, where),
                    morphism(gf, where));
  }
  return std::move(b).build(Validation::Full);
}

// ---------------------------------------------------------------------------
// Functors

bool same_category(const FinCategory& a, const FinCategory& b) {
  return &a == &b || a == b;
}

FinFunctor::FinFunctor(CategoryPtr domain, CategoryPtr codomain,
                       std::vector<ObjId> object_map,
                       std::vector<MorId> morphism_map)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      object_map_(std::move(object_map)),
      morphism_map_(std::move(morphism_map)) {
  const FinCategory& e = *domain_;
  const FinCategory& b = *codomain_;
  if (object_map_.size() != e.num_objects() ||
      morphism_map_.size() != e.num_morphisms()) {
    throw Error(ErrorKind::NotAFunctor, "map sizes do not match the domain");
  }
  for (ObjId x : object_map_) {
    if (x >= b.num_objects()) {
      throw Error(ErrorKind::DanglingReference, "object image out of range");
    }
  }
  for (MorId m = 0; m < e.num_morphisms(); ++m) {
    const MorId fm = morphism_map_[m];
    if (fm >= b.num_morphisms()) {
      throw Error(ErrorKind::DanglingReference, "morphism image out of range");
    }
    if (b.source(fm) != object_map_[e.source(m)] ||
        b.target(fm) != object_map_[e.target(m)]) {
      throw Error(ErrorKind::NotAFunctor,
                  "'" + e.morphism_name(m) + "' maps to '" +
                      b.morphism_name(fm) + "' with mismatched endpoints");
    }
  }
  for (ObjId x = 0; x < e.num_objects(); ++x) {
    if (morphism_map_[e.identity(x)] != b.identity(object_map_[x])) {
      throw Error(ErrorKind::NotAFunctor,
                  "identity of '" + e.object_name(x) + "' not preserved");
    }
  }
  for (MorId f = 0; f < e.num_morphisms(); ++f) {
    for (ObjId z = 0; z < e.num_objects(); ++z) {
      for (MorId g : e.hom(e.target(f), z)) {
        if (morphism_map_[e.compose(g, f)] !=
            b.compose(morphism_map_[g], morphism_map_[f])) {
          throw Error(ErrorKind::NotAFunctor,
                      "composite " + e.morphism_name(g) + " o " +
                          e.morphism_name(f) + " not preserved");
        }
      }
    }
  }
}

FinFunctor FinFunctor::unchecked(CategoryPtr domain, CategoryPtr codomain,
                                 std::vector<ObjId> object_map,
                                 std::vector<MorId> morphism_map) {
  FinFunctor f;
  f.domain_ = std::move(domain);
  f.codomain_ = std::move(codomain);
  f.object_map_ = std::move(object_map);
  f.morphism_map_ = std::move(morphism_map);
  return f;
}

RawFunctor FinFunctor::to_raw() const {
  RawFunctor raw;
  for (ObjId x = 0; x < object_map_.size(); ++x) {
    raw.object_map[domain_->object_name(x)] =
        codomain_->object_name(object_map_[x]);
  }
  for (MorId m = 0; m < morphism_map_.size(); ++m) {
    raw.morphism_map[domain_->morphism_name(m)] =
        codomain_->morphism_name(morphism_map_[m]);
  }
  return raw;
}

bool operator==(const FinFunctor& a, const FinFunctor& b) {
  return a.object_map_ == b.object_map_ &&
         a.morphism_map_ == b.morphism_map_ &&
         same_category(*a.domain_, *b.domain_) &&
         same_category(*a.codomain_, *b.codomain_);
}

FinFunctor validate_functor(const RawFunctor& raw, CategoryPtr domain,
                            CategoryPtr codomain) {
  const FinCategory& e = *domain;
  const FinCategory& b = *codomain;
  std::vector<ObjId> objects(e.num_objects(), kNone);
  std::vector<MorId> morphisms(e.num_morphisms(), kNone);
  for (const auto& [from, to] : raw.object_map) {
    auto x = e.find_object(from);
    auto y = b.find_object(to);
    if (!x || !y) {
      throw Error(ErrorKind::DanglingReference,
                  "object_map entry '" + from + "' -> '" + to + "'");
    }
    objects[*x] = *y;
  }
  for (const auto& [from, to] : raw.morphism_map) {
    auto f = e.find_morphism(from);
    auto g = b.find_morphism(to);
    if (!f || !g) {
      throw Error(ErrorKind::DanglingReference,
                  "morphism_map entry '" + from + "' -> '" + to + "'");
    }
    morphisms[*f] = *g;
  }
  for (ObjId x = 0; x < objects.size(); ++x) {
    if (objects[x] == kNone) {
      throw Error(ErrorKind::NotAFunctor,
                  "object '" + e.object_name(x) + "' is not mapped");
    }
  }
  for (MorId m = 0; m < morphisms.size(); ++m) {
    if (morphisms[m] == kNone) {
      throw Error(ErrorKind::NotAFunctor,
                  "morphism '" + e.morphism_name(m) + "' is not mapped");
    }
  }
  return FinFunctor(std::move(domain), std::move(codomain), std::move(objects),
                    std::move(morphisms));
}

FinFunctor identity_functor(const CategoryPtr& c) {
  std::vector<ObjId> objects(c->num_objects());
  std::vector<MorId> morphisms(c->num_morphisms());
  std::iota(objects.begin(), objects.end(), ObjId{0});
  std::iota(morphisms.begin(), morphisms.end(), MorId{0});
  return FinFunctor(c, c, std::move(objects), std::move(morphisms));
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  if (!same_category(f.codomain(), g.domain())) {
    throw Error(ErrorKind::DomainMismatch,
                "codomain of the first functor differs from domain of the "
                "second");
  }
  std::vector<ObjId> objects;
  std::vector<MorId> morphisms;
  for (ObjId x : f.object_map()) objects.push_back(g(x));
  for (MorId m : f.morphism_map()) morphisms.push_back(g.map(m));
  return FinFunctor(f.domain_ptr(), g.codomain_ptr(), std::move(objects),
                    std::move(morphisms));
}

CheckResult check_fully_faithful(const FinFunctor& f) {
  const FinCategory& e = f.domain();
  const FinCategory& b = f.codomain();
  std::vector<MorId> seen(b.num_morphisms(), kNone);
  for (ObjId x = 0; x < e.num_objects(); ++x) {
    for (ObjId y = 0; y < e.num_objects(); ++y) {
      const auto source = e.hom(x, y);
      const auto target = b.hom(f(x), f(y));
      for (MorId m : source) {
        const MorId image = f.map(m);
        if (seen[image] != kNone && seen[image] != m) {
          return CheckResult::fail("'" + e.morphism_name(seen[image]) +
                                   "' and '" + e.morphism_name(m) +
                                   "' both map to '" +
                                   b.morphism_name(image) + "'");
        }
        seen[image] = m;
      }
      if (source.size() != target.size()) {
        return CheckResult::fail(
            "hom(" + e.object_name(x) + ", " + e.object_name(y) + ") has " +
            std::to_string(source.size()) + " elements but hom(" +
            b.object_name(f(x)) + ", " + b.object_name(f(y)) + ") has " +
            std::to_string(target.size()));
      }
      for (MorId m : source) seen[f.map(m)] = kNone;
    }
  }
  return CheckResult::pass();
}

CheckResult check_essentially_surjective(const FinFunctor& f) {
  const FinCategory& b = f.codomain();
  std::vector<bool> hit(b.num_objects(), false);
  for (ObjId x : f.object_map()) hit[b.iso_class_of()[x]] = true;
  for (ObjId y = 0; y < b.num_objects(); ++y) {
    if (!hit[b.iso_class_of()[y]]) {
      return CheckResult::fail("object '" + b.object_name(y) +
                               "' is not isomorphic to any image object");
    }
  }
  return CheckResult::pass();
}

bool is_fully_faithful(const FinFunctor& f) {
  return check_fully_faithful(f).ok;
}

bool is_essentially_surjective(const FinFunctor& f) {
  return check_essentially_surjective(f).ok;
}

bool is_equivalence(const FinFunctor& f) {
  return is_fully_faithful(f) && is_essentially_surjective(f);
}

bool is_isomorphism(const FinFunctor& f) {
  auto bijective = [](const std::vector<std::uint32_t>& map, std::size_t n) {
    if (map.size() != n) return false;
    std::vector<bool> hit(n, false);
    for (auto v : map) {
      if (hit[v]) return false;
      hit[v] = true;
    }
    return true;
  };
  return bijective(f.object_map(), f.codomain().num_objects()) &&
         bijective(f.morphism_map(), f.codomain().num_morphisms());
}

std::vector<std::vector<ObjId>> iso_classes(const FinCategory& c) {
  std::vector<std::vector<ObjId>> classes;
  std::vector<std::size_t> slot(c.num_objects(), kNone);
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    const auto rep = c.iso_class_of()[x];
    if (slot[rep] == kNone) {
      slot[rep] = classes.size();
      classes.emplace_back();
    }
    classes[slot[rep]].push_back(x);
  }
  return classes;
}

}  // namespace catdesc
