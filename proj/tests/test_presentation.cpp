#include <doctest.h>

#include "catdesc/enumerate.hpp"
#include "catdesc/presentation.hpp"
#include "support.hpp"

using namespace catdesc;

namespace {

using PresentationPtr = std::shared_ptr<const Presentation>;

PresentationPtr iso_pair() {
  auto p = std::make_shared<Presentation>();
  p->nodes = {"x", "y"};
  p->generators = {{"f", 0, 1}, {"g", 1, 0}};
  p->relations = {{Path{0, {0, 1}}, Path{0, {}}, "gf"},
                  {Path{1, {1, 0}}, Path{1, {}}, "fg"}};
  validate(*p);
  return p;
}

PresentationPtr free_loop() {
  auto p = std::make_shared<Presentation>();
  p->nodes = {"x"};
  p->generators = {{"a", 0, 0}};
  return p;
}

PresentationPtr cyclic(std::size_t order) {
  auto p = std::make_shared<Presentation>();
  p->nodes = {"x"};
  p->generators = {{"a", 0, 0}};
  p->relations = {{Path{0, std::vector<GenId>(order, 0)}, Path{0, {}}, "a^n"}};
  return p;
}

PresentationPtr of(const CategoryPtr& c) {
  return std::make_shared<const Presentation>(presentation_of(*c));
}

// The morphism of c named by each generator, composed along a path.
MorId evaluate(const FinCategory& c, const Presentation& p, const Path& path) {
  MorId m = c.identity(*c.find_object(p.nodes[path.source]));
  for (GenId g : path.steps) {
    m = c.compose(*c.find_morphism(p.generators[g].name), m);
  }
  return m;
}

}  // namespace

TEST_CASE("free arrow completes without rules") {
  const auto p = of(arrow_category());
  CHECK(p->generators.size() == 1);
  CHECK(p->relations.empty());
  const RewriteSystem r = complete_rewriting(p);
  CHECK(r.complete());
  CHECK(r.rules().empty());
  const auto hom = hom_set(r, 0, 1);
  REQUIRE(hom.is_yes());
  CHECK(hom.value() == std::vector<Path>{Path{0, {0}}});
  const auto fin = try_finitize(r);
  REQUIRE(fin.is_yes());
  CHECK(canonical_form(*fin.value().category) ==
        canonical_form(*arrow_category()));
}

TEST_CASE("idempotent presentation") {
  const auto p = of(idempotent_category());
  const RewriteSystem r = complete_rewriting(p);
  REQUIRE(r.complete());
  REQUIRE(r.rules().size() == 1);
  CHECK(r.rules()[0].lhs == std::u16string{0, 0});
  CHECK(r.rules()[0].rhs == std::u16string{0});
  CHECK(normal_form(r, Path{0, {0, 0, 0}}) == Path{0, {0}});
  CHECK(normal_form(r, Path{0, {}}) == Path{0, {}});

  const auto hom = hom_set(r, 0, 0);
  REQUIRE(hom.is_yes());
  CHECK(hom.value() == std::vector<Path>{Path{0, {}}, Path{0, {0}}});

  const auto fin = try_finitize(r);
  REQUIRE(fin.is_yes());
  const FinCategory& c = *fin.value().category;
  CHECK(c.num_morphisms() == 2);
  const MorId e = fin.value().generator_image[0];
  CHECK(c.compose(e, e) == e);
  CHECK_FALSE(c.is_identity(e));
}

TEST_CASE("iso pair normal forms") {
  const RewriteSystem r = complete_rewriting(iso_pair());
  REQUIRE(r.complete());
  CHECK(normal_form(r, Path{0, {0, 1, 0}}) == Path{0, {0}});
  for (ObjId x = 0; x < 2; ++x) {
    for (ObjId y = 0; y < 2; ++y) {
      const auto hom = hom_set(r, x, y);
      REQUIRE(hom.is_yes());
      REQUIRE(hom.value().size() == 1);
      CHECK(hom.value()[0].length() <= 1);
    }
  }
}

TEST_CASE("infinite hom-sets are refuted") {
  const auto hom = hom_set(free_loop(), 0, 0);
  CHECK(hom.is_no());
  CHECK(try_finitize(free_loop()).is_no());
}

TEST_CASE("word-length bound gives Undecided, raising it decides") {
  Limits tight;
  tight.max_word_len = 3;
  CHECK(hom_set(cyclic(5), 0, 0, tight).is_undecided());
  const auto hom = hom_set(cyclic(5), 0, 0);
  REQUIRE(hom.is_yes());
  CHECK(hom.value().size() == 5);
}

TEST_CASE("incomplete systems refuse normal forms") {
  Limits tight;
  tight.max_rules = 1;
  const RewriteSystem r = complete_rewriting(iso_pair(), tight);
  CHECK_FALSE(r.complete());
  CHECK_FALSE(r.bound().empty());
  try {
    normal_form(r, Path{0, {0}});
    FAIL("normal form from an incomplete system");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompleteSystem);
  }
  CHECK(hom_set(r, 0, 0).is_undecided());
}

TEST_CASE("non-parallel relation is rejected") {
  Presentation p;
  p.nodes = {"x", "y"};
  p.generators = {{"f", 0, 1}};
  p.relations = {{Path{0, {0}}, Path{0, {}}, "bad"}};
  try {
    validate(p);
    FAIL("ill-typed relation accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidPresentation);
  }
}

TEST_CASE("round trip through presentations of small categories") {
  Limits short_words;
  short_words.max_word_len = 4;
  for (const auto& c : enumerate_categories(2, 5)) {
    const auto p = of(c);
    const RewriteSystem r = complete_rewriting(p);
    REQUIRE(r.complete());
    for (const auto& rel : p->relations) {
      CHECK(normal_form(r, rel.lhs) == normal_form(r, rel.rhs));
    }
    const auto fin = try_finitize(r);
    REQUIRE(fin.is_yes());
    const Finitization& f = fin.value();
    // Normal forms evaluate to distinct morphisms covering c.
    std::vector<MorId> value;
    for (const Path& nf : f.normal_forms) {
      CHECK(normal_form(r, nf) == nf);
      value.push_back(evaluate(*c, *p, nf));
    }
    std::vector<MorId> sorted = value;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(sorted.size() == c->num_morphisms());
    // Composition in the finitized category matches c.
    const FinCategory& k = *f.category;
    for (MorId g = 0; g < k.num_morphisms(); ++g) {
      for (MorId h = 0; h < k.num_morphisms(); ++h) {
        if (k.source(g) != k.target(h)) continue;
        CHECK(value[k.compose(g, h)] == c->compose(value[g], value[h]));
      }
    }
    // Tighter limits may only lose decisions.
    for (ObjId x = 0; x < c->num_objects(); ++x) {
      for (ObjId y = 0; y < c->num_objects(); ++y) {
        const auto tight = hom_set(r, x, y, short_words);
        const auto loose = hom_set(r, x, y);
        if (!tight.is_undecided()) {
          CHECK(tight.tag() == loose.tag());
        }
      }
    }
  }
}

TEST_CASE("normal forms never grow") {
  const RewriteSystem r = complete_rewriting(iso_pair());
  for (std::uint32_t code = 0; code < 64; ++code) {
    Path p{0, {}};
    ObjId at = 0;
    for (std::uint32_t bit = 0; bit < 6; ++bit) {
      // Alternate f and g so the path stays well typed.
      p.steps.push_back(at == 0 ? 0 : 1);
      at = 1 - at;
      if (((code >> bit) & 1) == 0) break;
    }
    const Path nf = normal_form(r, p);
    CHECK_FALSE(shortlex_less(p, nf));
    CHECK(normal_form(r, nf) == nf);
  }
}
