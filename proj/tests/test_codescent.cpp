#include <doctest.h>

#include "catdesc/codescent.hpp"
#include "catdesc/enumerate.hpp"
#include "catdesc/kernel.hpp"
#include "support.hpp"

using namespace catdesc;

namespace {

CodescentFactorization codescent(const FinFunctor& p) {
  return codescent_presentation(higher_kernel(p));
}

FinitizedComparison finitized(const CodescentFactorization& c) {
  const auto fin =
      finitize_comparison(c, complete_rewriting(c.presentation));
  REQUIRE(fin.is_yes());
  return fin.value();
}

bool chaotic(const FinCategory& c) {
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    for (ObjId y = 0; y < c.num_objects(); ++y) {
      if (c.hom(x, y).size() != 1) return false;
    }
  }
  return true;
}

GenId generator(const Presentation& p, const std::string& name) {
  for (GenId g = 0; g < p.generators.size(); ++g) {
    if (p.generators[g].name == name) return g;
  }
  FAIL("no generator " << name);
  return 0;
}

}  // namespace

TEST_CASE("identity on 2: CoDesc is 2 and K an isomorphism") {
  const auto c = codescent(test::curated("id_2"));
  CHECK(check_factorization(c));
  const auto k = finitized(c).comparison;
  CHECK(is_isomorphism(test::recheck(k)));
  CHECK(comparison_ff(c).is_yes());
}

TEST_CASE("D2 -> 1: chaotic codescent category") {
  const auto c = codescent(test::curated("D2->1"));
  CHECK(c.presentation->nodes.size() == 2);
  CHECK(c.presentation->generators.size() == 4);
  CHECK(check_factorization(c));
  const auto k = finitized(c).comparison;
  CHECK(k.domain().num_objects() == 2);
  CHECK(chaotic(k.domain()));
  CHECK(is_equivalence(k));
  const auto ff = comparison_ff(c);
  REQUIRE(ff.is_yes());
  CHECK(ff.value());
}

TEST_CASE("2 -> 1: theta(0,1) equals f and CoDesc is an iso pair") {
  const auto c = codescent(test::curated("2->1"));
  const Presentation& p = *c.presentation;
  const RewriteSystem r = complete_rewriting(c.presentation);
  REQUIRE(r.complete());
  const GenId f = generator(p, "f");
  const GenId t01 = generator(p, "theta(0,1)");
  const GenId t10 = generator(p, "theta(1,0)");
  CHECK(normal_form(r, Path{0, {t01}}) == normal_form(r, Path{0, {f}}));
  CHECK(normal_form(r, Path{0, {f, t10}}) == Path{0, {}});
  CHECK(normal_form(r, Path{1, {t10, f}}) == Path{1, {}});
  const auto k = finitized(c).comparison;
  CHECK(chaotic(k.domain()));
  CHECK(is_equivalence(k));
}

TEST_CASE("1 -> D2: CoDesc is 1 and K the inclusion") {
  const auto c = codescent(test::curated("1->D2"));
  const auto k = finitized(c).comparison;
  CHECK(k.domain().num_morphisms() == 1);
  CHECK(is_fully_faithful(k));
  CHECK_FALSE(is_essentially_surjective(k));
  CHECK(comparison_ff(c).is_yes());
}

TEST_CASE("corrupted K breaks the unit relation") {
  auto c = codescent(test::curated("1->E"));
  const CategoryPtr& e = c.comparison.codomain;
  const MorId idem = *e->find_morphism("e");
  c.comparison.generator_map[c.theta[0]] = idem;
  const CheckResult r = check_factorization(c);
  CHECK_FALSE(r.ok);
  CHECK(r.witness.find("unit") != std::string::npos);
}

TEST_CASE("dropping a composition relation breaks Phi") {
  auto c = codescent(identity_functor(idempotent_category()));
  auto pres = std::make_shared<Presentation>(*c.presentation);
  std::erase_if(pres->relations, [](const Relation& r) {
    return r.label.rfind("composition", 0) == 0;
  });
  c.presentation = pres;
  c.comparison.domain = pres;
  const CheckResult r = check_factorization(c);
  CHECK_FALSE(r.ok);
  CHECK(r.witness.find("Phi does not preserve e o e") != std::string::npos);
}

TEST_CASE("relation counts") {
  const auto c = codescent(test::curated("D2->1"));
  // No non-identity morphisms in D2 or its kernel; 2 unit and 8 cocycle
  // relations.
  CHECK(c.relation_counts == std::array<std::size_t, 4>{0, 0, 2, 8});
}

TEST_CASE("theta is invertible and isomorphisms reproduce their domain") {
  const auto cats = enumerate_categories(2, 3);
  for (const auto& e : cats) {
    for (const auto& b : cats) {
      for_each_functor(e, b, [&](const FinFunctor& p) {
        const auto c = codescent(p);
        CHECK(check_factorization(c));
        const RewriteSystem r = complete_rewriting(c.presentation);
        if (!r.complete()) return true;
        const KernelPairDiagram& d = c.diagram;
        for (ObjId a = 0; a < d.x1->num_objects(); ++a) {
          const ObjId u = d.d1(a), v = d.d0(a);
          const std::string back =
              "(" + d.x0->object_name(v) + "," + d.x0->object_name(u) + ")";
          const ObjId reverse = *d.x1->find_object(back);
          CHECK(normal_form(r, Path{u, {c.theta[a], c.theta[reverse]}}) ==
                Path{u, {}});
        }
        if (is_isomorphism(p)) {
          const auto k = finitized(c).comparison;
          CHECK(is_isomorphism(k));
          CHECK(canonical_form(k.domain()) == canonical_form(*e));
        }
        return true;
      });
    }
  }
}

TEST_CASE("comparison verdicts ignore identifier names") {
  RawCategory d2 = discrete_two_category()->to_raw();
  for (auto& o : d2.objects) o = "renamed_" + o;
  for (auto& m : d2.morphisms) {
    m.src = "renamed_" + m.src;
    m.tgt = "renamed_" + m.tgt;
  }
  std::map<std::string, std::string> ids;
  for (auto& [o, m] : d2.identities) ids["renamed_" + o] = m;
  d2.identities = ids;
  const CategoryPtr e = test::category(d2);
  const FinFunctor p = test::functor(
      e, terminal_category(), {{"renamed_a", "*"}, {"renamed_b", "*"}},
      {{"ida", "id*"}, {"idb", "id*"}});
  CHECK(comparison_ff(codescent(p)).tag() ==
        comparison_ff(codescent(test::curated("D2->1"))).tag());
}
