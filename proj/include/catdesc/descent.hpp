#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "catdesc/codescent.hpp"
#include "catdesc/fincat.hpp"
#include "catdesc/verdict.hpp"

namespace catdesc {

struct FinitizedSize {
  std::size_t objects = 0;
  std::size_t morphisms = 0;
};

struct CodescentSummary {
  std::size_t nodes = 0;
  std::size_t generators = 0;
  std::size_t relations = 0;
  /// composition, naturality, unit, cocycle
  std::array<std::size_t, 4> relation_counts{};
  /// Rules of the completed system (or of the last attempt).
  std::size_t rules = 0;
  Verdict<FinitizedSize> finitization;
};

struct DescentReport {
  std::size_t domain_objects = 0;
  std::size_t domain_morphisms = 0;
  std::size_t codomain_objects = 0;
  std::size_t codomain_morphisms = 0;

  CheckResult fully_faithful;
  CheckResult lax_epi;
  bool cauchy_equivalence = false;

  CodescentSummary codescent;
  CheckResult comparison_lax_epi;
  Verdict<bool> comparison_ff;
  /// is_equivalence(cauchy_map(K)), when CoDesc(p) finitized.
  std::optional<bool> comparison_cauchy_equivalence;

  bool descent_set = false;
  Verdict<bool> effective_descent_set;

  std::vector<std::string> notes;

  /// Filled by attach_oracle.
  std::optional<std::size_t> oracle_bound;
  std::optional<Verdict<bool>> oracle_lan_ff;
  std::optional<Verdict<bool>> oracle_consistency;
};

/// Full pipeline: higher kernel, codescent presentation, lax epimorphism
/// test and hom-set comparison for K, plus Karoubi cross-checks whenever
/// CoDesc(p) finitizes. Throws Error(ConsistencyViolation) if two routes
/// disagree.
DescentReport descent_verdict(const FinFunctor& p, const Limits& limits = {});

/// Appends the notes that carry the verdict over to CAT(-,Cat) and to
/// Cauchy-complete targets receiving Set fully faithfully.
DescentReport transfer_report(DescentReport r);

}  // namespace catdesc
