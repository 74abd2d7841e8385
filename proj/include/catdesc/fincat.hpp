#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catdesc/error.hpp"

namespace catdesc {

using ObjId = std::uint32_t;
using MorId = std::uint32_t;

inline constexpr std::uint32_t kNone = 0xffffffffu;

/// Category as written in a file: opaque string identifiers, explicit
/// composition triples [g, f, g∘f].
struct RawMorphism {
  std::string id;
  std::string src;
  std::string tgt;
};

struct RawCategory {
  std::vector<std::string> objects;
  std::vector<RawMorphism> morphisms;
  std::map<std::string, std::string> identities;
  std::vector<std::array<std::string, 3>> composition;
};

struct RawFunctor {
  std::map<std::string, std::string> object_map;
  std::map<std::string, std::string> morphism_map;
};

enum class Validation {
  Full,        // closure, identity laws, associativity
  Structural,  // skip associativity and per-entry typing of a dense table
               // (categories built componentwise)
};

/// A validated finite category. Immutable once built; morphisms and objects
/// are addressed by dense indices in declaration order.
class FinCategory {
 public:
  struct Morphism {
    std::string name;
    ObjId source;
    ObjId target;
  };

  /// Index-level builder for categories computed by the library.
  class Builder {
   public:
    ObjId add_object(std::string name);
    MorId add_morphism(std::string name, ObjId source, ObjId target);
    void set_identity(ObjId x, MorId m);
    void set_composite(MorId g, MorId f, MorId gf);
    /// Dense table, entry g * |morphisms| + f holding g∘f (kNone where not
    /// composable). Individual set_composite entries are applied on top.
    void set_composition_table(std::vector<MorId> table);
    /// Throws Error on any violated invariant.
    FinCategory build(Validation level = Validation::Full) &&;

   private:
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<MorId> identities_;
    std::vector<std::array<MorId, 3>> composites_;
    std::vector<MorId> table_;
  };

  FinCategory() = default;

  std::size_t num_objects() const noexcept { return objects_.size(); }
  std::size_t num_morphisms() const noexcept { return morphisms_.size(); }

  const std::string& object_name(ObjId x) const { return objects_[x]; }
  const std::string& morphism_name(MorId m) const {
    return morphisms_[m].name;
  }
  ObjId source(MorId m) const { return morphisms_[m].source; }
  ObjId target(MorId m) const { return morphisms_[m].target; }
  MorId identity(ObjId x) const { return identities_[x]; }
  bool is_identity(MorId m) const { return identities_[source(m)] == m; }

  /// g after f; requires source(g) == target(f).
  MorId compose(MorId g, MorId f) const {
    return composition_[static_cast<std::size_t>(g) * morphisms_.size() + f];
  }

  std::span<const MorId> hom(ObjId x, ObjId y) const {
    const std::size_t cell = static_cast<std::size_t>(x) * objects_.size() + y;
    return {hom_data_.data() + hom_offset_[cell],
            hom_offset_[cell + 1] - hom_offset_[cell]};
  }
  /// Position of m inside hom(source(m), target(m)).
  std::size_t hom_position(MorId m) const { return hom_position_[m]; }

  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;

  /// Isomorphism class index of each object; classes are numbered by their
  /// least member.
  std::span<const std::uint32_t> iso_class_of() const { return iso_class_; }
  bool isomorphic(ObjId x, ObjId y) const {
    return iso_class_[x] == iso_class_[y];
  }
  /// Some isomorphism x → y (with inverse), if one exists.
  std::optional<std::pair<MorId, MorId>> find_isomorphism(ObjId x,
                                                          ObjId y) const;

  bool is_idempotent(MorId m) const {
    return source(m) == target(m) && compose(m, m) == m;
  }

  RawCategory to_raw() const;

  friend bool operator==(const FinCategory& a, const FinCategory& b);

 private:
  void index();
  void sort_names();

  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> identities_;
  std::vector<MorId> composition_;
  std::vector<std::size_t> hom_offset_;  // CSR over (source, target) cells
  std::vector<MorId> hom_data_;
  std::vector<std::size_t> hom_position_;
  std::vector<std::uint32_t> iso_class_;
  // Indices sorted by name, for lookup.
  std::vector<ObjId> object_order_;
  std::vector<MorId> morphism_order_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

FinCategory validate_category(const RawCategory& raw);

inline CategoryPtr share(FinCategory c) {
  return std::make_shared<const FinCategory>(std::move(c));
}

/// Structure-preserving map between two FinCategory values.
class FinFunctor {
 public:
  /// Throws Error(NotAFunctor) with a witness if the maps do not preserve
  /// sources, targets, identities or composition.
  FinFunctor(CategoryPtr domain, CategoryPtr codomain,
             std::vector<ObjId> object_map, std::vector<MorId> morphism_map);

  /// No checks; for maps that are functors by construction.
  static FinFunctor unchecked(CategoryPtr domain, CategoryPtr codomain,
                              std::vector<ObjId> object_map,
                              std::vector<MorId> morphism_map);

  const FinCategory& domain() const { return *domain_; }
  const FinCategory& codomain() const { return *codomain_; }
  const CategoryPtr& domain_ptr() const { return domain_; }
  const CategoryPtr& codomain_ptr() const { return codomain_; }

  ObjId operator()(ObjId x) const { return object_map_[x]; }
  MorId map(MorId m) const { return morphism_map_[m]; }

  const std::vector<ObjId>& object_map() const { return object_map_; }
  const std::vector<MorId>& morphism_map() const { return morphism_map_; }

  RawFunctor to_raw() const;

  friend bool operator==(const FinFunctor& a, const FinFunctor& b);

 private:
  FinFunctor() = default;

  CategoryPtr domain_;
  CategoryPtr codomain_;
  std::vector<ObjId> object_map_;
  std::vector<MorId> morphism_map_;
};

/// True when both handles denote equal categories (pointer or structure).
bool same_category(const FinCategory& a, const FinCategory& b);

FinFunctor validate_functor(const RawFunctor& raw, CategoryPtr domain,
                            CategoryPtr codomain);

FinFunctor identity_functor(const CategoryPtr& c);

/// G ∘ F. Throws Error(DomainMismatch) unless codomain(F) == domain(G).
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);

bool is_fully_faithful(const FinFunctor& f);
bool is_essentially_surjective(const FinFunctor& f);
bool is_equivalence(const FinFunctor& f);
/// Bijective on objects and morphisms.
bool is_isomorphism(const FinFunctor& f);

/// Witness-carrying variants used by reports.
CheckResult check_fully_faithful(const FinFunctor& f);
CheckResult check_essentially_surjective(const FinFunctor& f);

/// Partition of the objects into isomorphism classes, each class sorted,
/// classes ordered by least member.
std::vector<std::vector<ObjId>> iso_classes(const FinCategory& c);

/// Exhaustive re-check of closure, identity and associativity laws.
CheckResult check_category_laws(const FinCategory& c);

}  // namespace catdesc
