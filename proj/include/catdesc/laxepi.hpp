#pragma once

#include <string>
#include <vector>

#include "catdesc/codescent.hpp"
#include "catdesc/fincat.hpp"

namespace catdesc {

/// One factorization x → p(a) → y, standing for its coend class.
struct Factorization {
  ObjId via;  // object a of the domain
  MorId u;    // x → p(a)
  MorId v;    // p(a) → y
};

/// The coend of b(x, p-) × b(p-, y) for one pair (x, y), with the
/// canonical map into b(x, y).
struct CoendCell {
  ObjId x;
  ObjId y;
  /// Least raw factorization of each class, classes in order of their
  /// representatives (domain object, then u, then v in hom order).
  std::vector<Factorization> classes;
  /// v∘u for each class.
  std::vector<MorId> image;
  bool injective = true;
  bool surjective = true;
};

struct CoendTable {
  /// Pairs (x, y) in x-major order.
  std::vector<CoendCell> cells;
  bool bijective() const;
};

CoendTable coend_table(const FinFunctor& p);

/// Canonical coend map bijective for every pair; failing pair and classes
/// as witness.
CheckResult check_lax_epimorphism(const FinFunctor& p);
bool is_lax_epimorphism(const FinFunctor& p);

/// Same criterion for a functor out of a presented category; the congruence
/// is generated by the generators alone.
CheckResult check_lax_epimorphism_presented(const PresentedFunctor& k);
bool is_lax_epimorphism_presented(const PresentedFunctor& k);

}  // namespace catdesc
