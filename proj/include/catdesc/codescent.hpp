#pragma once

#include <array>
#include <memory>
#include <vector>

#include "catdesc/kernel.hpp"
#include "catdesc/presentation.hpp"

namespace catdesc {

/// A functor out of a finitely presented category, given on generators.
struct PresentedFunctor {
  std::shared_ptr<const Presentation> domain;
  CategoryPtr codomain;
  std::vector<ObjId> object_map;
  std::vector<MorId> generator_map;

  /// Composite in the codomain of the generator images along p.
  MorId evaluate(const Path& p) const;
};

/// Every relation of the domain must map to an equality in the codomain.
CheckResult check_respects_relations(const PresentedFunctor& k);

/// e → CoDesc(p) → b with the codescent category given by generators and
/// relations.
///
/// Generators: the non-identity morphisms of e (declaration order), then
/// one theta(u,v): u → v per object (u,v) of e ×_b e. Relations in order:
/// composition table of e, naturality of theta along morphisms of e ×_b e,
/// unit theta(u,u) = id, cocycle theta(u,w) = theta(v,w) o theta(u,v).
struct CodescentFactorization {
  KernelPairDiagram diagram;
  std::shared_ptr<const Presentation> presentation;
  /// Generator index of theta for each object of X1.
  std::vector<GenId> theta;
  /// Φ on morphisms of e.
  std::vector<Path> phi;
  PresentedFunctor comparison;
  /// Relation counts: composition, naturality, unit, cocycle.
  std::array<std::size_t, 4> relation_counts{};
};

CodescentFactorization codescent_presentation(const KernelPairDiagram& d);

/// K respects every relation, Φ is functorial on e (each composite of e is
/// a declared relation) and K∘Φ = p on objects and morphisms.
CheckResult check_factorization(const CodescentFactorization& c);

/// K on CoDesc(p), once CoDesc(p) has been turned into a FinCategory.
struct FinitizedComparison {
  Finitization codescent;
  FinFunctor comparison;
};

/// Yes(true) iff K is bijective on every hom-set; No carries the failing
/// hom-set; Undecided when some hom-set of CoDesc(p) does not finitize.
Verdict<bool> comparison_ff(const CodescentFactorization& c,
                            const RewriteSystem& rewriting,
                            const Limits& limits = {});
Verdict<bool> comparison_ff(const CodescentFactorization& c,
                            const Limits& limits = {});

Verdict<FinitizedComparison> finitize_comparison(
    const CodescentFactorization& c, const RewriteSystem& rewriting,
    const Limits& limits = {});

}  // namespace catdesc
