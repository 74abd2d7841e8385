#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "catdesc/descent.hpp"
#include "catdesc/fincat.hpp"
#include "catdesc/verdict.hpp"

namespace catdesc {

inline constexpr std::size_t kOracleCap = 1'000'000;

/// A functor into skeletal finite sets {0, ..., k-1}.
struct BoundedPresheaf {
  CategoryPtr category;
  std::vector<std::uint32_t> sizes;                 // per object
  std::vector<std::vector<std::uint32_t>> action;   // per morphism

  friend bool operator==(const BoundedPresheaf& a, const BoundedPresheaf& b) {
    return a.sizes == b.sizes && a.action == b.action;
  }
};

CheckResult check_presheaf(const BoundedPresheaf& f);
std::string describe(const BoundedPresheaf& f);

/// Every presheaf with all sets of size <= n, ordered by size vector and
/// then by function tables (morphism order, lexicographic). `visit` returning
/// false stops the enumeration. Throws Error(ResourceExceeded) after `cap`
/// presheaves.
void for_each_presheaf(const CategoryPtr& c, std::size_t n,
                       const std::function<bool(const BoundedPresheaf&)>& visit,
                       std::size_t cap = kOracleCap);
std::vector<BoundedPresheaf> enumerate_presheaves(const CategoryPtr& c,
                                                  std::size_t n,
                                                  std::size_t cap = kOracleCap);

/// Components per object.
using Transformation = std::vector<std::vector<std::uint32_t>>;

std::string describe(const Transformation& t);

/// All natural transformations f → g in lexicographic order of components.
/// With `bijective`, only natural isomorphisms.
std::vector<Transformation> natural_transformations(
    const BoundedPresheaf& f, const BoundedPresheaf& g, bool bijective = false,
    std::size_t cap = kOracleCap);

/// Pointwise left Kan extension along p, as a colimit over each comma
/// category p ↓ y.
class LeftKanExtension {
 public:
  LeftKanExtension(const FinFunctor& p, const BoundedPresheaf& f);

  const BoundedPresheaf& value() const { return value_; }
  /// Class in (Lan F)(y) of s ∈ F(a) along u: p(a) → y.
  std::uint32_t class_of(ObjId y, ObjId a, MorId u, std::uint32_t s) const;
  /// Lan(alpha) for alpha: F → G, where `target` extends G.
  Transformation map(const Transformation& alpha,
                     const LeftKanExtension& target) const;

 private:
  FinFunctor p_;
  std::vector<std::uint32_t> source_sizes_;
  BoundedPresheaf value_;
  // offsets_[y][a]: start of the block of (a, u, s) in the raw elements at y
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<std::vector<std::uint32_t>> classes_;
  struct Element {
    ObjId a;
    MorId u;
    std::uint32_t s;
  };
  std::vector<std::vector<Element>> representative_;
};

BoundedPresheaf oracle_lan(const FinFunctor& p, const BoundedPresheaf& f);

/// Lan_p on transformations between all presheaves of size <= n on the
/// domain: No with a witness when it is not bijective, Yes(true) when no
/// failure exists at this bound, Undecided when the cap is hit.
Verdict<bool> oracle_lan_ff_probe(const FinFunctor& p, std::size_t n,
                                  std::size_t cap = kOracleCap);

/// Presheaf F on e with sigma[alpha]: F(d1 alpha) → F(d0 alpha) for each
/// object alpha of e ×_b e, natural, unital and satisfying the cocycle
/// equation.
struct BoundedDescentDatum {
  BoundedPresheaf presheaf;
  CategoryPtr pairs;  // e ×_b e
  std::vector<std::vector<std::uint32_t>> sigma;
};

std::string describe(const BoundedDescentDatum& d);

struct OracleOptions {
  std::size_t bound = 2;
  /// Only data whose sigma components are bijections.
  bool require_invertible_sigma = false;
  std::size_t cap = kOracleCap;
};

struct DescentOracleResult {
  std::vector<BoundedDescentDatum> data;
  /// Presheaves H on b; the comparison sends H to (H∘p, identity).
  std::vector<BoundedPresheaf> codomain_presheaves;
  CheckResult comparison_faithful;
  CheckResult comparison_full;
  /// Indices into `data` of data isomorphic to no comparison image.
  std::vector<std::size_t> unmatched;
};

DescentOracleResult oracle_descent_category(const FinFunctor& p,
                                            const OracleOptions& options = {});

/// Bounded cross-check of a report: descent requires the comparison to be
/// fully faithful on bounded presheaves; effective descent additionally
/// requires every bounded datum to be isomorphic to a comparison image.
/// Undecided when the cap is hit.
Verdict<bool> oracle_consistency(const FinFunctor& p, const DescentReport& r,
                                 const OracleOptions& options = {});

/// Runs both oracles at options.bound, stores them in r and throws
/// Error(ConsistencyViolation) when either refutes the report.
void attach_oracle(DescentReport& r, const FinFunctor& p,
                   const OracleOptions& options = {});

}  // namespace catdesc
