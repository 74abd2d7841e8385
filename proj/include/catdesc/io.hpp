#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "catdesc/descent.hpp"
#include "catdesc/fincat.hpp"
#include "catdesc/oracle.hpp"

namespace catdesc {

using Json = nlohmann::ordered_json;

/// Parses a category document:
///
///   {"objects": ["x", ...],
///    "morphisms": [{"id": "f", "src": "x", "tgt": "y"}, ...],
///    "identities": {"x": "idx", ...},
///    "composition": [["g", "f", "gf"], ...]}
///
/// Throws Error(ParseError) with line:column for malformed text and
/// Error(SchemaError) naming the JSON pointer of the offending field.
/// `origin` prefixes every diagnostic.
RawCategory parse_category(std::string_view text,
                           const std::string& origin = "<input>");
RawCategory parse_category_json(const Json& doc,
                           const std::string& origin = "<input>");
Json emit_category(const RawCategory& raw);

/// Validates raw, first adding the composites with an identity that the
/// document leaves implicit.
FinCategory build_category(RawCategory raw);

/// A functor document:
///
///   {"domain": "e.json" | {category}, "codomain": ...,
///    "object_map": {"x": "u", ...}, "morphism_map": {"f": "g", ...}}
///
/// Category references are paths relative to the functor document.
struct FunctorDocument {
  Json domain;
  Json codomain;
  RawFunctor functor;
};

FunctorDocument parse_functor(std::string_view text,
                              const std::string& origin = "<input>");
FunctorDocument parse_functor_json(const Json& doc,
                              const std::string& origin = "<input>");
Json emit_functor(const FunctorDocument& doc);
/// Inline-category document for f.
FunctorDocument functor_document(const FinFunctor& f);

std::string read_text(const std::filesystem::path& path);
CategoryPtr load_category(const std::filesystem::path& path);
/// Resolves category references against `base_dir`.
FinFunctor load_functor(const FunctorDocument& doc,
                        const std::filesystem::path& base_dir);
FinFunctor load_functor(const std::filesystem::path& path);

void to_json(Json& j, const FinitizedSize& s);

template <class T>
Json verdict_to_json(const Verdict<T>& v) {
  Json j;
  j["verdict"] = std::string(v.tag());
  if (v.is_yes()) {
    j["value"] = v.value();
  } else if (v.is_no()) {
    j["witness"] = v.witness();
  } else {
    j["bound"] = v.bound();
  }
  return j;
}

Json check_to_json(const CheckResult& c);
Json report_to_json(const DescentReport& r);

/// Stable text form: two-space indentation, trailing newline.
std::string dump(const Json& j);

}  // namespace catdesc
