#include <doctest.h>

#include <numeric>

#include "catdesc/descent.hpp"
#include "catdesc/enumerate.hpp"
#include "catdesc/oracle.hpp"
#include "support.hpp"

using namespace catdesc;

namespace {

using Table = std::vector<std::uint32_t>;

// Presheaves with sets of size <= n, counted by trying every table for every
// morphism and keeping the functorial ones.
std::size_t brute_presheaf_count(const FinCategory& c, std::uint32_t n) {
  const std::size_t k = c.num_objects(), m = c.num_morphisms();
  std::size_t count = 0;
  std::vector<std::uint32_t> sizes(k, 0);
  for (;;) {
    std::vector<Table> tables(m);
    std::function<void(MorId)> pick = [&](MorId i) {
      if (i == m) {
        for (MorId g = 0; g < m; ++g) {
          for (MorId f = 0; f < m; ++f) {
            if (c.source(g) != c.target(f)) continue;
            for (std::uint32_t s = 0; s < sizes[c.source(f)]; ++s) {
              const MorId gf = c.compose(g, f);
              if (tables[gf][s] != tables[g][tables[f][s]]) return;
            }
          }
        }
        for (ObjId x = 0; x < k; ++x) {
          const Table& t = tables[c.identity(x)];
          for (std::uint32_t s = 0; s < sizes[x]; ++s) {
            if (t[s] != s) return;
          }
        }
        ++count;
        return;
      }
      const std::uint32_t from = sizes[c.source(i)], to = sizes[c.target(i)];
      Table t(from, 0);
      if (from > 0 && to == 0) return;
      for (;;) {
        tables[i] = t;
        pick(i + 1);
        std::size_t j = from;
        while (j > 0 && t[j - 1] + 1 == to) t[--j] = 0;
        if (j == 0) return;
        ++t[j - 1];
      }
    };
    pick(0);
    std::size_t i = k;
    while (i > 0 && sizes[i - 1] == n) sizes[--i] = 0;
    if (i == 0) break;
    ++sizes[i - 1];
  }
  return count;
}

// Size of (Lan_p F)(y) as the set of triples (a, u: p a -> y, s in F a)
// modulo (a, u'∘p w, s) ~ (a', u', F(w) s), closed by relabelling.
std::size_t brute_lan_size(const FinFunctor& p, const BoundedPresheaf& f,
                           ObjId y) {
  const FinCategory& e = p.domain();
  const FinCategory& b = p.codomain();
  struct Triple {
    ObjId a;
    MorId u;
    std::uint32_t s;
  };
  std::vector<Triple> raw;
  for (ObjId a = 0; a < e.num_objects(); ++a) {
    for (MorId u : b.hom(p(a), y)) {
      for (std::uint32_t s = 0; s < f.sizes[a]; ++s) raw.push_back({a, u, s});
    }
  }
  auto index = [&](ObjId a, MorId u, std::uint32_t s) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i].a == a && raw[i].u == u && raw[i].s == s) return i;
    }
    return raw.size();
  };
  std::vector<std::size_t> label(raw.size());
  std::iota(label.begin(), label.end(), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (MorId w = 0; w < e.num_morphisms(); ++w) {
      const ObjId a = e.source(w), a2 = e.target(w);
      for (MorId u2 : b.hom(p(a2), y)) {
        for (std::uint32_t s = 0; s < f.sizes[a]; ++s) {
          const std::size_t i = index(a, b.compose(u2, p.map(w)), s);
          const std::size_t j = index(a2, u2, f.action[w][s]);
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
  std::size_t classes = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) classes += label[i] == i;
  return classes;
}

BoundedPresheaf constant(const CategoryPtr& c, std::uint32_t size) {
  BoundedPresheaf f{c, std::vector<std::uint32_t>(c->num_objects(), size),
                    std::vector<Table>(c->num_morphisms())};
  for (auto& t : f.action) {
    t.resize(size);
    std::iota(t.begin(), t.end(), 0);
  }
  return f;
}

}  // namespace

TEST_CASE("presheaf enumeration") {
  CHECK(enumerate_presheaves(arrow_category(), 2).size() == 11);
  CHECK(enumerate_presheaves(idempotent_category(), 2).size() == 5);
  for (const auto& c : enumerate_categories(2, 3)) {
    const auto all = enumerate_presheaves(c, 2);
    CHECK(all.size() == brute_presheaf_count(*c, 2));
    for (const auto& f : all) CHECK(check_presheaf(f));
    for (std::size_t i = 1; i < all.size(); ++i) {
      CHECK_FALSE(all[i] == all[i - 1]);
    }
  }
}

TEST_CASE("left Kan extension examples") {
  SUBCASE("along the identity") {
    const FinFunctor id = identity_functor(arrow_category());
    for (const auto& f : enumerate_presheaves(id.domain_ptr(), 2)) {
      CHECK(oracle_lan(id, f).sizes == f.sizes);
    }
  }
  SUBCASE("1 -> 2") {
    const FinFunctor p = test::curated("1->2");
    const BoundedPresheaf lan = oracle_lan(p, constant(p.domain_ptr(), 2));
    CHECK(lan.sizes == std::vector<std::uint32_t>{2, 2});
    Table t = lan.action[*p.codomain().find_morphism("f")];
    std::sort(t.begin(), t.end());
    CHECK(t == Table{0, 1});
  }
  SUBCASE("1 -> D2") {
    const FinFunctor p = test::curated("1->D2");
    const BoundedPresheaf lan = oracle_lan(p, constant(p.domain_ptr(), 2));
    CHECK(lan.sizes[*p.codomain().find_object("a")] == 2);
    CHECK(lan.sizes[*p.codomain().find_object("b")] == 0);
  }
}

TEST_CASE("left Kan extension sizes match the brute-force colimit") {
  const auto cats = enumerate_categories(2, 3);
  for (const auto& e : cats) {
    const auto presheaves = enumerate_presheaves(e, 2);
    for (const auto& b : cats) {
      for_each_functor(e, b, [&](const FinFunctor& p) {
        for (const auto& f : presheaves) {
          const BoundedPresheaf lan = oracle_lan(p, f);
          CHECK(check_presheaf(lan));
          for (ObjId y = 0; y < b->num_objects(); ++y) {
            CHECK(lan.sizes[y] == brute_lan_size(p, f, y));
          }
        }
        return true;
      });
    }
  }
}

TEST_CASE("Lan fully-faithful probe") {
  CHECK(oracle_lan_ff_probe(test::curated("1->I"), 2).is_yes());
  const auto no = oracle_lan_ff_probe(test::curated("2->1"), 2);
  REQUIRE(no.is_no());
  CHECK_FALSE(no.witness().empty());
  const CategoryPtr empty = test::category(RawCategory{});
  const FinFunctor from_empty(empty, arrow_category(), {}, {});
  CHECK(oracle_lan_ff_probe(from_empty, 3).is_yes());
  CHECK(oracle_lan_ff_probe(test::curated("2->1"), 2, 3).is_undecided());
}

TEST_CASE("bounded descent categories") {
  OracleOptions one;
  one.bound = 1;
  SUBCASE("identity") {
    const auto r = oracle_descent_category(test::curated("id_2"), one);
    CHECK(r.data.size() == r.codomain_presheaves.size());
    CHECK(r.unmatched.empty());
    CHECK(r.comparison_faithful);
    CHECK(r.comparison_full);
  }
  SUBCASE("D2 -> 1") {
    // Only the data with both components equal in size admit sigma.
    const auto r = oracle_descent_category(test::curated("D2->1"), one);
    CHECK(r.data.size() == 2);
    CHECK(r.unmatched.empty());
    OracleOptions two;
    const auto r2 = oracle_descent_category(test::curated("D2->1"), two);
    CHECK(r2.data.size() == 4);  // 0! + 1! + 2!, sigma forced invertible
    CHECK(r2.unmatched.empty());
    CHECK(r2.comparison_full);
  }
  SUBCASE("1 -> D2") {
    const auto r = oracle_descent_category(test::curated("1->D2"), one);
    CHECK(r.data.size() == 2);
    CHECK(r.codomain_presheaves.size() == 4);
    CHECK(r.comparison_faithful);
    CHECK_FALSE(r.comparison_full);
  }
  SUBCASE("cap") {
    OracleOptions capped;
    capped.cap = 2;
    try {
      oracle_descent_category(test::curated("D2->1"), capped);
      FAIL("cap not enforced");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ResourceExceeded);
    }
  }
}

TEST_CASE("consistency with the verdicts") {
  for (const char* name : {"id_2", "D2->1", "1->D2", "2->1", "1->I", "1->E"}) {
    CAPTURE(name);
    const FinFunctor p = test::curated(name);
    DescentReport r = descent_verdict(p);
    const auto v = oracle_consistency(p, r);
    REQUIRE(v.is_yes());
    CHECK(v.value());
    CHECK_NOTHROW(attach_oracle(r, p));
    CHECK(r.oracle_bound == 2u);
  }
  OracleOptions capped;
  capped.cap = 1;
  const FinFunctor p = test::curated("D2->1");
  CHECK(oracle_consistency(p, descent_verdict(p), capped).is_undecided());
}

TEST_CASE("a wrong verdict is refuted") {
  const FinFunctor p = test::curated("1->D2");
  DescentReport r = descent_verdict(p);
  r.descent_set = true;
  r.effective_descent_set = Verdict<bool>::yes(true);
  CHECK(oracle_consistency(p, r).is_no());
  try {
    attach_oracle(r, p);
    FAIL("wrong verdict accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConsistencyViolation);
  }
}

TEST_CASE("oracles never refute the verdicts on small functors") {
  const auto cats = enumerate_categories(2, 4);
  for (const auto& e : cats) {
    for (const auto& b : cats) {
      for_each_functor(e, b, [&](const FinFunctor& p) {
        DescentReport r = descent_verdict(p);
        CHECK_NOTHROW(attach_oracle(r, p));
        CHECK_FALSE(r.oracle_consistency->is_no());
        if (is_fully_faithful(p)) CHECK(r.oracle_lan_ff->is_yes());
        return true;
      });
    }
  }
}
