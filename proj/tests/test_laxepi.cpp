#include <doctest.h>

#include <numeric>

#include "catdesc/cauchy.hpp"
#include "catdesc/codescent.hpp"
#include "catdesc/enumerate.hpp"
#include "catdesc/kernel.hpp"
#include "catdesc/laxepi.hpp"
#include "support.hpp"

using namespace catdesc;

namespace {

struct Brute {
  std::size_t raw = 0;
  std::size_t classes = 0;
  bool bijective = true;
};

// Coend at (x, y) by closing the raw triples under every identification
// (a, u, v∘p(w)) ~ (a', p(w)∘u, v) until nothing changes.
Brute brute_coend(const FinFunctor& p, ObjId x, ObjId y) {
  const FinCategory& e = p.domain();
  const FinCategory& b = p.codomain();
  struct Triple {
    ObjId a;
    MorId u, v;
  };
  std::vector<Triple> raw;
  for (ObjId a = 0; a < e.num_objects(); ++a) {
    for (MorId u : b.hom(x, p(a))) {
      for (MorId v : b.hom(p(a), y)) raw.push_back({a, u, v});
    }
  }
  auto find = [&](ObjId a, MorId u, MorId v) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i].a == a && raw[i].u == u && raw[i].v == v) return i;
    }
    FAIL("triple outside the coend");
    return raw.size();
  };
  std::vector<std::size_t> label(raw.size());
  std::iota(label.begin(), label.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (MorId w = 0; w < e.num_morphisms(); ++w) {
      const ObjId a = e.source(w), a2 = e.target(w);
      const MorId pw = p.map(w);
      for (MorId u : b.hom(x, p(a))) {
        for (MorId v : b.hom(p(a2), y)) {
          const std::size_t i = find(a, u, b.compose(v, pw));
          const std::size_t j = find(a2, b.compose(pw, u), v);
          const std::size_t lo = std::min(label[i], label[j]);
          for (auto& l : label) {
            if ((l == label[i] || l == label[j]) && l != lo) {
              l = lo;
              changed = true;
            }
          }
        }
      }
    }
  }
  Brute out;
  out.raw = raw.size();
  std::vector<MorId> image;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (label[i] != i) continue;
    ++out.classes;
    image.push_back(b.compose(raw[i].v, raw[i].u));
  }
  std::sort(image.begin(), image.end());
  out.bijective = image.size() == b.hom(x, y).size() &&
                  std::adjacent_find(image.begin(), image.end()) == image.end();
  return out;
}

bool brute_lax_epi(const FinFunctor& p) {
  const FinCategory& b = p.codomain();
  for (ObjId x = 0; x < b.num_objects(); ++x) {
    for (ObjId y = 0; y < b.num_objects(); ++y) {
      if (!brute_coend(p, x, y).bijective) return false;
    }
  }
  return true;
}

PresentedFunctor comparison(const FinFunctor& p) {
  return codescent_presentation(higher_kernel(p)).comparison;
}

}  // namespace

TEST_CASE("coend of 1 -> E at (x,x)") {
  const FinFunctor p = test::curated("1->E");
  const CoendTable t = coend_table(p);
  REQUIRE(t.cells.size() == 1);
  const CoendCell& cell = t.cells[0];
  CHECK(cell.classes.size() == 4);
  CHECK(brute_coend(p, 0, 0).raw == 4);
  const MorId e = *p.codomain().find_morphism("e");
  CHECK(std::count(cell.image.begin(), cell.image.end(), e) == 3);
  CHECK_FALSE(cell.injective);
  CHECK(cell.surjective);
  CHECK_FALSE(is_lax_epimorphism(p));
}

TEST_CASE("coend of 1 -> D2 is empty at the missed object") {
  const FinFunctor p = test::curated("1->D2");
  const CoendTable t = coend_table(p);
  const ObjId b = *p.codomain().find_object("b");
  const CoendCell& cell = t.cells[b * 2 + b];
  CHECK(cell.classes.empty());
  CHECK_FALSE(cell.surjective);
  const CheckResult r = check_lax_epimorphism(p);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("lax epimorphism examples") {
  CHECK(is_lax_epimorphism(test::curated("2->1")));
  CHECK(coend_table(test::curated("2->1")).cells[0].classes.size() == 1);
  CHECK(is_lax_epimorphism(test::curated("1->I")));
  CHECK(is_lax_epimorphism(test::curated("id_2")));
  CHECK_FALSE(is_lax_epimorphism(test::curated("D2->1")));
  CHECK(coend_table(test::curated("D2->1")).cells[0].classes.size() == 2);
  CHECK_FALSE(is_lax_epimorphism(test::curated("1->2")));
  for (const CoendCell& cell : coend_table(test::curated("id_2")).cells) {
    CHECK(cell.injective);
    CHECK(cell.surjective);
  }
}

TEST_CASE("presented comparison examples") {
  CHECK(is_lax_epimorphism_presented(comparison(test::curated("id_2"))));
  CHECK_FALSE(is_lax_epimorphism_presented(comparison(test::curated("1->D2"))));
  CHECK(is_lax_epimorphism_presented(comparison(test::curated("D2->1"))));
}

TEST_CASE("coend criterion matches the brute-force closure") {
  const auto cats = enumerate_categories(2, 4);
  for (const auto& e : cats) {
    for (const auto& b : cats) {
      for_each_functor(e, b, [&](const FinFunctor& p) {
        const CoendTable t = coend_table(p);
        for (const CoendCell& cell : t.cells) {
          const Brute brute = brute_coend(p, cell.x, cell.y);
          CHECK(cell.classes.size() == brute.classes);
          CHECK((cell.injective && cell.surjective) == brute.bijective);
        }
        CHECK(is_lax_epimorphism(p) == brute_lax_epi(p));
        return true;
      });
    }
  }
}

TEST_CASE("coend route agrees with the Karoubi route") {
  const auto cats = enumerate_categories(2, 4);
  std::vector<KaroubiEnvelope> envs;
  for (const auto& c : cats) envs.push_back(karoubi_envelope(c));
  for (std::size_t i = 0; i < cats.size(); ++i) {
    for (std::size_t j = 0; j < cats.size(); ++j) {
      for_each_functor(cats[i], cats[j], [&](const FinFunctor& p) {
        const FinFunctor cp = cauchy_map(p, envs[i], envs[j]);
        const bool ff = is_fully_faithful(p), lax = is_lax_epimorphism(p);
        CHECK((ff && lax) == is_equivalence(cp));
        CHECK(lax == is_lax_epimorphism(cp));
        CHECK(ff == is_fully_faithful(cp));
        return true;
      });
    }
  }
}

TEST_CASE("lax epimorphisms compose") {
  const auto cats = enumerate_categories(2, 3);
  for (const auto& a : cats) {
    for (const auto& b : cats) {
      for (const auto& c : cats) {
        for (const auto& f : all_functors(a, b)) {
          if (!is_lax_epimorphism(f)) continue;
          for (const auto& g : all_functors(b, c)) {
            if (!is_lax_epimorphism(g)) continue;
            CHECK(is_lax_epimorphism(compose_functors(g, f)));
          }
        }
      }
    }
  }
}

TEST_CASE("presented and finitized comparisons agree") {
  const auto cats = enumerate_categories(2, 3);
  for (const auto& e : cats) {
    for (const auto& b : cats) {
      for_each_functor(e, b, [&](const FinFunctor& p) {
        const auto c = codescent_presentation(higher_kernel(p));
        const auto fin =
            finitize_comparison(c, complete_rewriting(c.presentation));
        if (!fin.is_yes()) return true;
        CHECK(is_lax_epimorphism(fin.value().comparison) ==
              is_lax_epimorphism_presented(c.comparison));
        return true;
      });
    }
  }
}
