#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "catdesc/fincat.hpp"

namespace catdesc {

/// All finite categories with at most `max_objects` objects and at most
/// `max_morphisms` morphisms, one per isomorphism class, in a canonical
/// deterministic order. Objects are named "0", "1", ...; identities "id0",
/// "id1", ...; other morphisms "a", "b", ... in hom-set order.
std::vector<CategoryPtr> enumerate_categories(std::size_t max_objects,
                                              std::size_t max_morphisms);

/// Every functor domain → codomain, in lexicographic order of
/// (object map, morphism map). Stops early when `visit` returns false.
void for_each_functor(const CategoryPtr& domain, const CategoryPtr& codomain,
                      const std::function<bool(const FinFunctor&)>& visit);

std::vector<FinFunctor> all_functors(const CategoryPtr& domain,
                                     const CategoryPtr& codomain);

/// Canonical string of the isomorphism class of c (equal for isomorphic
/// categories, different otherwise).
std::string canonical_form(const FinCategory& c);

/// A random category with 1..max_objects objects and at most max_morphisms
/// morphisms, produced by randomized backtracking over composition tables.
CategoryPtr random_category(std::mt19937_64& rng, std::size_t max_objects,
                            std::size_t max_morphisms);

/// A random functor domain → codomain (uniform over randomized search
/// order, not over all functors); nullopt if none exists.
std::optional<FinFunctor> random_functor(std::mt19937_64& rng,
                                         const CategoryPtr& domain,
                                         const CategoryPtr& codomain);

}  // namespace catdesc

namespace catdesc {

/// An automorphism given by its object and morphism permutations.
struct Automorphism {
  std::vector<ObjId> objects;
  std::vector<MorId> morphisms;
};

/// All automorphisms of c (the identity first).
std::vector<Automorphism> automorphisms(const FinCategory& c);

/// True when f is the lexicographically least functor (by object map, then
/// morphism map) among β∘f∘α for automorphisms α of the domain and β of the
/// codomain. Exactly one functor per such orbit passes.
bool is_orbit_representative(const FinFunctor& f,
                             const std::vector<Automorphism>& domain_autos,
                             const std::vector<Automorphism>& codomain_autos);

}  // namespace catdesc
