#pragma once

#include <utility>
#include <vector>

#include "catdesc/fincat.hpp"

namespace catdesc {

/// Idempotent completion of a finite category.
///
/// Objects are pairs (x, m) with m: x → x idempotent, named "(x;m)" and
/// listed by x, then by m in hom order. Morphisms (x, m) → (y, n) are the
/// f: x → y with n∘f = f = f∘m, named "f@(x;m)->(y;n)"; the identity of
/// (x, m) is m.
struct KaroubiEnvelope {
  CategoryPtr base;
  CategoryPtr completion;
  /// x ↦ (x, id_x), f ↦ f.
  FinFunctor unit;
  /// (x, m) for each object of the completion.
  std::vector<std::pair<ObjId, MorId>> split;
  /// Underlying base morphism of each morphism of the completion.
  std::vector<MorId> underlying;

  /// Object (x, m) for each base morphism m, kNone unless m is idempotent.
  std::vector<ObjId> object_index;

  ObjId object_of(MorId idempotent) const { return object_index[idempotent]; }
  /// Morphism of the completion from `from` to `to` with underlying f, or
  /// kNone.
  MorId morphism_of(ObjId from, ObjId to, MorId f) const;
};

KaroubiEnvelope karoubi_envelope(const CategoryPtr& c);

/// (x, m) ↦ (p x, p m), f ↦ p f, between freshly built envelopes.
FinFunctor cauchy_map(const FinFunctor& p);
/// Same, reusing envelopes of domain and codomain.
FinFunctor cauchy_map(const FinFunctor& p, const KaroubiEnvelope& domain,
                      const KaroubiEnvelope& codomain);

/// Every idempotent g: x → x factors as g = s∘r with r∘s an identity.
CheckResult check_idempotents_split(const FinCategory& c);

/// The unit of the envelope is an equivalence.
bool is_cauchy_complete(const CategoryPtr& c);

}  // namespace catdesc
