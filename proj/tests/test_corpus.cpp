#include <doctest.h>

#include "catdesc/enumerate.hpp"
#include "support.hpp"

using namespace catdesc;

namespace {

CorpusOptions small() {
  CorpusOptions o;
  o.max_objects = 2;
  o.max_morphisms = 3;
  o.random_count = 30;
  o.random_max_objects = 2;
  o.random_max_morphisms = 4;
  o.seed = 3;
  return o;
}

}  // namespace

TEST_CASE("small corpus passes and counts every functor") {
  const CorpusOptions o = small();
  const CorpusResult r = run_corpus(o);
  CHECK(r.ok());
  CHECK(r.curated_lines.size() == curated_functors().size());

  const auto cats = enumerate_categories(2, 3);
  std::size_t expected = 0, ff = 0, equivalences = 0;
  for (const auto& e : cats) {
    for (const auto& b : cats) {
      for (const auto& p : all_functors(e, b)) {
        ++expected;
        ff += is_fully_faithful(p);
        equivalences += is_equivalence(p);
      }
    }
  }
  const CorpusCounts& c = r.exhaustive;
  CHECK(c.functors == expected);
  CHECK(c.fully_faithful == ff);
  CHECK(c.cauchy_equivalence >= equivalences);
  CHECK(c.effective_yes + c.effective_no + c.effective_undecided == expected);
  CHECK(c.finitized + c.finitization_infinite + c.finitization_undecided ==
        expected);
  CHECK(r.random.functors == o.random_count);
}

TEST_CASE("corpus output is deterministic") {
  CorpusOptions o = small();
  const std::string first = dump(corpus_to_json(run_corpus(o), o));
  CHECK(first == dump(corpus_to_json(run_corpus(o), o)));
  o.jobs = 2;
  CHECK(first == dump(corpus_to_json(run_corpus(o), o)));
}

TEST_CASE("search mode reports descent without effective descent") {
  CorpusOptions o = small();
  o.random_count = 0;
  o.search_descent_not_effective = true;
  const CorpusResult r = run_corpus(o);
  REQUIRE(r.ok());
  REQUIRE_FALSE(r.findings.empty());
  for (const Json& doc : r.findings) {
    const FinFunctor p =
        load_functor(parse_functor_json(doc["functor"]), ".");
    const DescentReport report = descent_verdict(p);
    CHECK(report.descent_set);
    CHECK_FALSE(report.effective_descent_set.is_yes());
    CHECK(doc["effective"]["verdict"] ==
          std::string(report.effective_descent_set.tag()));
  }
}

TEST_CASE("invariant checks hold on the curated functors") {
  CorpusOptions o;
  for (const auto& c : curated_functors()) {
    CAPTURE(c.name);
    std::optional<DescentReport> report;
    CHECK_FALSE(check_corpus_invariants(c.functor, o, &report).has_value());
    CHECK(report.has_value());
  }
}
