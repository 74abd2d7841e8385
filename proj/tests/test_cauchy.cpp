#include <doctest.h>

#include "catdesc/cauchy.hpp"
#include "catdesc/enumerate.hpp"
#include "support.hpp"

using namespace catdesc;

namespace {

// Objects and morphisms of the idempotent completion, counted directly.
std::pair<std::size_t, std::size_t> brute_envelope_size(const FinCategory& c) {
  std::vector<MorId> idempotents;
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    if (c.source(m) == c.target(m) && c.compose(m, m) == m) {
      idempotents.push_back(m);
    }
  }
  std::size_t morphisms = 0;
  for (MorId m : idempotents) {
    for (MorId n : idempotents) {
      for (MorId f = 0; f < c.num_morphisms(); ++f) {
        if (c.source(f) != c.source(m) || c.target(f) != c.source(n)) continue;
        morphisms += c.compose(n, f) == f && c.compose(f, m) == f;
      }
    }
  }
  return {idempotents.size(), morphisms};
}

}  // namespace

TEST_CASE("envelopes of 1 and 2 are themselves") {
  for (const auto& c : {terminal_category(), arrow_category()}) {
    const KaroubiEnvelope env = karoubi_envelope(c);
    CHECK(canonical_form(*env.completion) == canonical_form(*c));
    CHECK(is_equivalence(env.unit));
    CHECK(is_cauchy_complete(c));
  }
}

TEST_CASE("envelope of E") {
  const CategoryPtr e = idempotent_category();
  const KaroubiEnvelope env = karoubi_envelope(e);
  const FinCategory& k = *env.completion;
  REQUIRE(k.num_objects() == 2);
  CHECK(k.num_morphisms() == 5);
  const ObjId plain = *k.find_object("(x;idx)");
  const ObjId split = *k.find_object("(x;e)");
  CHECK(k.hom(plain, plain).size() == 2);
  CHECK(k.hom(plain, split).size() == 1);
  CHECK(k.hom(split, plain).size() == 1);
  CHECK(k.hom(split, split).size() == 1);
  CHECK(k.morphism_name(k.identity(split)) == "e@(x;e)->(x;e)");
  CHECK_FALSE(is_cauchy_complete(e));
  CHECK_FALSE(check_idempotents_split(*e).ok);
  CHECK(is_cauchy_complete(env.completion));
}

TEST_CASE("envelope invariants on small categories") {
  for (const auto& c : enumerate_categories(2, 5)) {
    const KaroubiEnvelope env = karoubi_envelope(c);
    const auto [objects, morphisms] = brute_envelope_size(*c);
    CHECK(env.completion->num_objects() == objects);
    CHECK(env.completion->num_morphisms() == morphisms);
    CHECK(check_category_laws(*env.completion));
    CHECK(is_fully_faithful(test::recheck(env.unit)));
    CHECK(check_idempotents_split(*env.completion));
    CHECK(is_equivalence(karoubi_envelope(env.completion).unit));
    CHECK(is_cauchy_complete(c) == check_idempotents_split(*c).ok);
  }
}

TEST_CASE("cauchy_map examples") {
  const FinFunctor id = identity_functor(idempotent_category());
  const FinFunctor cid = cauchy_map(id);
  for (ObjId x = 0; x < cid.domain().num_objects(); ++x) CHECK(cid(x) == x);
  for (MorId m = 0; m < cid.domain().num_morphisms(); ++m) {
    CHECK(cid.map(m) == m);
  }

  CHECK(is_equivalence(cauchy_map(test::curated("1->I"))));

  const FinFunctor to_e = cauchy_map(test::curated("1->E"));
  CHECK_FALSE(is_equivalence(to_e));
  CHECK_FALSE(is_fully_faithful(to_e));
  CHECK_FALSE(is_essentially_surjective(to_e));
}

TEST_CASE("cauchy_map is strictly functorial") {
  const auto cats = enumerate_categories(2, 3);
  std::vector<KaroubiEnvelope> envs;
  for (const auto& c : cats) envs.push_back(karoubi_envelope(c));
  for (std::size_t a = 0; a < cats.size(); ++a) {
    for (std::size_t b = 0; b < cats.size(); ++b) {
      for (std::size_t c = 0; c < cats.size(); ++c) {
        for (const auto& f : all_functors(cats[a], cats[b])) {
          const FinFunctor cf = cauchy_map(f, envs[a], envs[b]);
          CHECK_NOTHROW(test::recheck(cf));
          for (const auto& g : all_functors(cats[b], cats[c])) {
            const FinFunctor cg = cauchy_map(g, envs[b], envs[c]);
            CHECK(cauchy_map(compose_functors(g, f), envs[a], envs[c]) ==
                  compose_functors(cg, cf));
          }
        }
      }
    }
  }
}
