#include <doctest.h>

#include "catdesc/descent.hpp"
#include "catdesc/enumerate.hpp"
#include "support.hpp"

using namespace catdesc;

namespace {

bool mentions(const DescentReport& r, const std::string& text) {
  for (const auto& n : r.notes) {
    if (n.find(text) != std::string::npos) return true;
  }
  return false;
}

void check_invariants(const DescentReport& r) {
  CHECK(r.descent_set == r.comparison_lax_epi.ok);
  const bool yes = r.comparison_lax_epi.ok && r.comparison_ff.is_yes() &&
                   r.comparison_ff.value();
  CHECK(r.effective_descent_set.is_yes() == yes);
  if (r.effective_descent_set.is_yes()) CHECK(r.effective_descent_set.value());
  CHECK(r.effective_descent_set.is_undecided() ==
        (r.comparison_ff.is_undecided() && r.comparison_lax_epi.ok));
  if (r.codescent.finitization.is_yes()) {
    REQUIRE(r.comparison_cauchy_equivalence.has_value());
    CHECK(*r.comparison_cauchy_equivalence ==
          r.effective_descent_set.is_yes());
  } else {
    CHECK_FALSE(r.comparison_cauchy_equivalence.has_value());
  }
}

}  // namespace

TEST_CASE("curated verdicts") {
  for (const char* name : {"id_2", "1->I", "D2->1", "2->1"}) {
    CAPTURE(name);
    const DescentReport r = descent_verdict(test::curated(name));
    CHECK(r.descent_set);
    REQUIRE(r.effective_descent_set.is_yes());
    CHECK(r.effective_descent_set.value());
    check_invariants(r);
  }
  for (const char* name : {"1->D2", "1->2"}) {
    CAPTURE(name);
    const DescentReport r = descent_verdict(test::curated(name));
    CHECK_FALSE(r.descent_set);
    CHECK(r.effective_descent_set.is_no());
    CHECK(r.effective_descent_set.witness().find("lax epimorphism") !=
          std::string::npos);
    check_invariants(r);
  }
  const DescentReport e = descent_verdict(test::curated("1->E"));
  CHECK_FALSE(e.lax_epi.ok);
  CHECK_FALSE(e.cauchy_equivalence);
  check_invariants(e);
}

TEST_CASE("report sizes and codescent summary") {
  const DescentReport r = descent_verdict(test::curated("D2->1"));
  CHECK(r.domain_objects == 2);
  CHECK(r.domain_morphisms == 2);
  CHECK(r.codomain_objects == 1);
  CHECK(r.codomain_morphisms == 1);
  CHECK(r.codescent.nodes == 2);
  CHECK(r.codescent.generators == 4);
  CHECK(r.codescent.relations == 10);
  REQUIRE(r.codescent.finitization.is_yes());
  CHECK(r.codescent.finitization.value().objects == 2);
  CHECK(r.codescent.finitization.value().morphisms == 4);
  CHECK_FALSE(r.fully_faithful.ok);
  CHECK_FALSE(r.lax_epi.ok);
}

TEST_CASE("transfer notes") {
  const auto yes = transfer_report(descent_verdict(test::curated("id_2")));
  CHECK(mentions(yes, "holds for all Cauchy-complete D"));
  CHECK(mentions(yes, "descent true, effective Yes"));

  const auto no = transfer_report(descent_verdict(test::curated("1->D2")));
  CHECK(mentions(no, "fails for all Cauchy-complete D"));
  CHECK(mentions(no, "descent false, effective No"));

  Limits tight;
  tight.max_word_len = 1;
  const DescentReport r = descent_verdict(test::curated("D2->1"), tight);
  REQUIRE(r.effective_descent_set.is_undecided());
  check_invariants(r);
  const auto undecided = transfer_report(r);
  CHECK(mentions(undecided, "is undecided ("));
  CHECK(mentions(undecided, r.effective_descent_set.bound()));
}

TEST_CASE("report invariants and equivalences on small functors") {
  const auto cats = enumerate_categories(2, 3);
  for (const auto& e : cats) {
    for (const auto& b : cats) {
      for_each_functor(e, b, [&](const FinFunctor& p) {
        const DescentReport r = descent_verdict(p);
        check_invariants(r);
        if (is_equivalence(p)) {
          REQUIRE(r.effective_descent_set.is_yes());
          CHECK(r.effective_descent_set.value());
        }
        return true;
      });
    }
  }
}

TEST_CASE("verdicts are invariant under isomorphisms") {
  const auto cats = enumerate_categories(2, 3);
  auto isos = [](const CategoryPtr& c) {
    std::vector<FinFunctor> out;
    for (auto& f : all_functors(c, c)) {
      if (is_isomorphism(f)) out.push_back(f);
    }
    return out;
  };
  for (const auto& e : cats) {
    const auto pre = isos(e);
    for (const auto& b : cats) {
      const auto post = isos(b);
      for (const auto& p : all_functors(e, b)) {
        const DescentReport r = descent_verdict(p);
        for (const auto& i : pre) {
          for (const auto& j : post) {
            const DescentReport s =
                descent_verdict(compose_functors(j, compose_functors(p, i)));
            CHECK(s.descent_set == r.descent_set);
            CHECK(s.effective_descent_set.tag() ==
                  r.effective_descent_set.tag());
          }
        }
      }
    }
  }
}
