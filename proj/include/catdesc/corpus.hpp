#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catdesc/descent.hpp"
#include "catdesc/fincat.hpp"
#include "catdesc/io.hpp"
#include "catdesc/presentation.hpp"

namespace catdesc {

/// 𝟙: one object "*".
CategoryPtr terminal_category();
/// 𝟚: objects "0", "1" and f: 0 → 1.
CategoryPtr arrow_category();
/// I: objects "x", "y" with inverse isomorphisms i: x → y, j: y → x.
CategoryPtr iso_category();
/// D2: discrete on "a", "b".
CategoryPtr discrete_two_category();
/// E: one object "x" with an idempotent e.
CategoryPtr idempotent_category();

struct CuratedCase {
  std::string name;
  FinFunctor functor;
};

/// id on 𝟚, 𝟙 → I, D2 → 𝟙, 𝟚 → 𝟙, 𝟙 → D2, 𝟙 → E, 𝟙 → 𝟚 (at 0).
std::vector<CuratedCase> curated_functors();

struct CorpusOptions {
  bool exhaustive = true;
  std::size_t max_objects = 2;
  std::size_t max_morphisms = 5;
  std::size_t random_count = 500;
  std::size_t random_max_objects = 3;
  std::size_t random_max_morphisms = 8;
  std::uint64_t seed = 1;
  /// Run descent_verdict on every functor, not just the Cauchy checks.
  bool pipeline = true;
  /// Collect functors of descent that are not (known) effective.
  bool search_descent_not_effective = false;
  Limits limits;
  /// Worker threads; results are merged in input order.
  std::size_t jobs = 1;
};

struct CorpusCounts {
  std::size_t functors = 0;
  std::size_t fully_faithful = 0;
  std::size_t lax_epi = 0;
  std::size_t cauchy_equivalence = 0;
  std::size_t descent = 0;
  std::size_t effective_yes = 0;
  std::size_t effective_no = 0;
  std::size_t effective_undecided = 0;
  std::size_t finitized = 0;
  std::size_t finitization_infinite = 0;
  std::size_t finitization_undecided = 0;
};

struct CorpusResult {
  CorpusCounts exhaustive;
  CorpusCounts random;
  std::vector<std::string> curated_lines;
  /// Functor documents found by the search mode, in corpus order.
  std::vector<Json> findings;
  /// First failed invariant, with the smallest failing functor.
  std::optional<std::string> violation;
  std::optional<Json> counterexample;

  bool ok() const { return !violation; }
};

/// The invariant checks applied to one functor; empty when all hold.
/// `report` receives the pipeline result when options.pipeline is set.
std::optional<std::string> check_corpus_invariants(
    const FinFunctor& p, const CorpusOptions& options,
    std::optional<DescentReport>* report = nullptr);

CorpusResult run_corpus(const CorpusOptions& options);

/// Deterministic machine-readable summary (no timings).
Json corpus_to_json(const CorpusResult& r, const CorpusOptions& options);

/// The seeded random corpus: `count` functors between random categories.
std::vector<FinFunctor> random_corpus(std::uint64_t seed, std::size_t count,
                                      std::size_t max_objects,
                                      std::size_t max_morphisms);

}  // namespace catdesc
