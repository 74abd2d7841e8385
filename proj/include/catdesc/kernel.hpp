#pragma once

#include <vector>

#include "catdesc/fincat.hpp"

namespace catdesc {

/// Strict pullback of f: A → C and g: B → C, with its two projections.
struct Pullback {
  CategoryPtr category;
  FinFunctor to_left;   // onto A
  FinFunctor to_right;  // onto B
};

/// Objects are pairs (x, y) with f(x) == g(y), morphisms pairs with equal
/// images; identifiers are "(x,y)". Throws Error(CodomainMismatch).
Pullback pullback(const FinFunctor& f, const FinFunctor& g);

/// The 3-truncated simplicial category e ⇇ e×_b e ⇶ e×_b e×_b e of p.
///
/// Indexing: d0(u,v) = v, d1(u,v) = u, s0(u) = (u,u);
/// faces[i] drops component i of (u,v,w); degeneracies[j] repeats
/// component j of (u,v).
struct KernelPairDiagram {
  FinFunctor p;
  CategoryPtr x0;
  CategoryPtr x1;
  CategoryPtr x2;
  FinFunctor d0;
  FinFunctor d1;
  FinFunctor s0;
  std::vector<FinFunctor> faces;         // X2 → X1, size 3
  std::vector<FinFunctor> degeneracies;  // X1 → X2, size 2
};

/// Category of tuples (arity 2 or 3) of objects and morphisms of the domain
/// of p sharing one p-image, composed componentwise.
FinCategory fiber_power(const FinFunctor& p, int arity);

KernelPairDiagram higher_kernel(const FinFunctor& p);

/// Pointwise check of every truncated simplicial identity and of
/// p∘d0 = p∘d1. Fails with the first violated identity as witness.
CheckResult validate_simplicial(const KernelPairDiagram& d);

}  // namespace catdesc
