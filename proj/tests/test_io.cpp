#include <doctest.h>

#include "catdesc/enumerate.hpp"
#include "catdesc/io.hpp"
#include "support.hpp"

using namespace catdesc;

namespace {

Error error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error raised");
  return Error(ErrorKind::ParseError, "");
}

bool contains(const std::string& text, const std::string& part) {
  return text.find(part) != std::string::npos;
}

}  // namespace

TEST_CASE("minimal category document") {
  const FinCategory c = build_category(parse_category(R"({
    "objects": ["*"],
    "morphisms": [{"id": "id", "src": "*", "tgt": "*"}],
    "identities": {"*": "id"},
    "composition": []
  })"));
  CHECK(c.num_objects() == 1);
  CHECK(c.num_morphisms() == 1);
}

TEST_CASE("schema errors name the field") {
  const Error missing = error_of([] {
    parse_category(R"({"objects": [], "morphisms": [], "composition": []})",
                   "cat.json");
  });
  CHECK(missing.kind() == ErrorKind::SchemaError);
  CHECK(contains(missing.what(), "identities"));
  CHECK(contains(missing.what(), "cat.json"));

  const Error dup = error_of([] {
    parse_category(R"({
      "objects": ["x"],
      "morphisms": [{"id": "f", "src": "x", "tgt": "x"},
                    {"id": "f", "src": "x", "tgt": "x"}],
      "identities": {"x": "f"},
      "composition": []
    })");
  });
  CHECK(dup.kind() == ErrorKind::SchemaError);
  CHECK(contains(dup.what(), "/morphisms/0/id"));
  CHECK(contains(dup.what(), "/morphisms/1/id"));

  const Error unknown = error_of([] {
    parse_category(R"({"objects": [], "morphisms": [], "identities": {},
                       "composition": [], "extra": 1})");
  });
  CHECK(unknown.kind() == ErrorKind::SchemaError);
  CHECK(contains(unknown.what(), "extra"));

  const Error type = error_of([] {
    parse_category(R"({"objects": [1], "morphisms": [], "identities": {},
                       "composition": []})");
  });
  CHECK(type.kind() == ErrorKind::SchemaError);
  CHECK(contains(type.what(), "/objects/0"));

  const Error key = error_of([] {
    parse_category(R"({"objects": [], "objects": [], "morphisms": [],
                       "identities": {}, "composition": []})");
  });
  CHECK(key.kind() == ErrorKind::SchemaError);
  CHECK(contains(key.what(), "duplicate key"));
}

TEST_CASE("parse errors carry line and column") {
  const Error e = error_of([] {
    parse_category("{\n  \"objects\": [\n    \"x\",,\n", "bad.json");
  });
  CHECK(e.kind() == ErrorKind::ParseError);
  CHECK(contains(e.what(), "bad.json:3:"));
}

TEST_CASE("semantic errors surface from validation") {
  const Error e = error_of([] {
    build_category(parse_category(R"({
      "objects": ["x", "y"],
      "morphisms": [{"id": "idx", "src": "x", "tgt": "x"},
                    {"id": "idy", "src": "y", "tgt": "y"},
                    {"id": "f", "src": "x", "tgt": "z"}],
      "identities": {"x": "idx", "y": "idy"},
      "composition": []
    })"));
  });
  CHECK(e.kind() == ErrorKind::DanglingReference);
}

TEST_CASE("emit and parse round trip") {
  for (const auto& c : enumerate_categories(2, 4)) {
    const RawCategory raw = c->to_raw();
    const RawCategory back = parse_category(dump(emit_category(raw)));
    CHECK(dump(emit_category(back)) == dump(emit_category(raw)));
    CHECK(canonical_form(build_category(back)) == canonical_form(*c));
  }
  for (const auto& named : curated_functors()) {
    const FunctorDocument doc = functor_document(named.functor);
    const FunctorDocument back = parse_functor(dump(emit_functor(doc)));
    CHECK(load_functor(back, ".") == named.functor);
  }
}

TEST_CASE("fixtures load and match the built-in examples") {
  const std::pair<const char*, const char*> pairs[] = {
      {"id_two", "id_2"},     {"one_to_iso", "1->I"}, {"d2_to_one", "D2->1"},
      {"two_to_one", "2->1"}, {"one_to_d2", "1->D2"}, {"one_to_e", "1->E"},
      {"one_to_two", "1->2"}};
  for (const auto& [file, name] : pairs) {
    CAPTURE(file);
    const FinFunctor f =
        load_functor(test::fixture(std::string(file) + ".functor.json"));
    const FinFunctor g = test::curated(name);
    CHECK(canonical_form(f.domain()) == canonical_form(g.domain()));
    CHECK(canonical_form(f.codomain()) == canonical_form(g.codomain()));
    CHECK(descent_verdict(f).effective_descent_set.tag() ==
          descent_verdict(g).effective_descent_set.tag());
  }
  CHECK(load_category(test::fixture("e.json"))->num_morphisms() == 2);
  const Error missing =
      error_of([] { load_category(test::fixture("absent.json")); });
  CHECK(contains(missing.what(), "absent.json"));
}

TEST_CASE("report serialization") {
  const Json j = report_to_json(descent_verdict(test::curated("1->D2")));
  for (const char* key :
       {"input", "fully_faithful", "lax_epi", "cauchy_equivalence", "codescent",
        "comparison_lax_epi", "comparison_ff", "comparison_cauchy_equivalence",
        "descent_set", "effective_descent_set", "notes", "oracle"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["descent_set"] == false);
  CHECK(j["effective_descent_set"]["verdict"] == "No");
  CHECK(j["effective_descent_set"].contains("witness"));
  CHECK(j["comparison_lax_epi"]["holds"] == false);
  CHECK(j["codescent"]["relation_counts"].size() == 4);
  CHECK(j["oracle"].is_null());
  CHECK(dump(j).back() == '\n');
  CHECK(dump(j) == dump(report_to_json(descent_verdict(test::curated("1->D2")))));

  CHECK(verdict_to_json(Verdict<bool>::undecided("max_word_len 3"))["bound"] ==
        "max_word_len 3");
}
