#include "catdesc/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace catdesc {
namespace {

[[noreturn]] void schema(const std::string& origin, const std::string& what) {
  throw Error(ErrorKind::SchemaError, origin + ": " + what);
}

std::string in_quotes(const std::string& s) { return "\"" + s + "\""; }

// Rejects duplicate keys, which the parser would otherwise drop silently.
Json parse_json(std::string_view text, const std::string& origin) {
  std::vector<std::set<std::string>> keys;
  Json::parser_callback_t guard = [&](int, Json::parse_event_t event,
                                      Json& parsed) {
    switch (event) {
      case Json::parse_event_t::object_start:
        keys.emplace_back();
        break;
      case Json::parse_event_t::object_end:
        keys.pop_back();
        break;
      case Json::parse_event_t::key: {
        const std::string key = parsed.get<std::string>();
        if (!keys.back().insert(key).second) {
          schema(origin, "duplicate key " + in_quotes(key));
        }
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return Json::parse(text.begin(), text.end(), guard);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(
        e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    if (auto colon = what.find(": "); colon != std::string::npos) {
      what = what.substr(colon + 2);
    }
    throw Error(ErrorKind::ParseError, origin + ":" + std::to_string(line) +
                                           ":" + std::to_string(column) +
                                           ": " + what);
  }
}

const Json& field(const Json& doc, const char* name, const std::string& origin) {
  auto it = doc.find(name);
  if (it == doc.end()) schema(origin, "missing field " + in_quotes(name));
  return *it;
}

void only_fields(const Json& doc, std::initializer_list<const char*> allowed,
                 const std::string& where, const std::string& origin) {
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool known = false;
    for (const char* a : allowed) known = known || it.key() == a;
    if (!known) schema(origin, where + "/" + it.key() + ": unknown field");
  }
}

std::string string_at(const Json& j, const std::string& pointer,
                      const std::string& origin) {
  if (!j.is_string()) schema(origin, pointer + ": expected a string");
  return j.get<std::string>();
}

std::map<std::string, std::string> string_map(const Json& j,
                                              const std::string& pointer,
                                              const std::string& origin) {
  if (!j.is_object()) schema(origin, pointer + ": expected an object");
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    out[it.key()] = string_at(it.value(), pointer + "/" + it.key(), origin);
  }
  return out;
}

Json string_map_json(const std::map<std::string, std::string>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

Json category_ref(const Json& j, const char* name, const std::string& origin) {
  if (!j.is_string() && !j.is_object()) {
    schema(origin, std::string("/") + name +
                       ": expected a path or an inline category");
  }
  return j;
}

}  // namespace

RawCategory parse_category(std::string_view text, const std::string& origin) {
  return parse_category_json(parse_json(text, origin), origin);
}

RawCategory parse_category_json(const Json& doc, const std::string& origin) {
  if (!doc.is_object()) schema(origin, "/: expected an object");
  only_fields(doc, {"objects", "morphisms", "identities", "composition"}, "",
              origin);
  RawCategory raw;

  const Json& objects = field(doc, "objects", origin);
  if (!objects.is_array()) schema(origin, "/objects: expected an array");
  std::unordered_map<std::string, std::size_t> seen_objects;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const std::string at = "/objects/" + std::to_string(i);
    std::string name = string_at(objects[i], at, origin);
    auto [it, fresh] = seen_objects.emplace(name, i);
    if (!fresh) {
      schema(origin, "objects: duplicate id " + in_quotes(name) + " at /objects/" +
                         std::to_string(it->second) + " and " + at);
    }
    raw.objects.push_back(std::move(name));
  }

  const Json& morphisms = field(doc, "morphisms", origin);
  if (!morphisms.is_array()) schema(origin, "/morphisms: expected an array");
  std::unordered_map<std::string, std::size_t> seen_morphisms;
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const std::string at = "/morphisms/" + std::to_string(i);
    const Json& m = morphisms[i];
    if (!m.is_object()) schema(origin, at + ": expected an object");
    only_fields(m, {"id", "src", "tgt"}, at, origin);
    RawMorphism r;
    for (auto [key, slot] : {std::pair{"id", &r.id}, std::pair{"src", &r.src},
                             std::pair{"tgt", &r.tgt}}) {
      auto it = m.find(key);
      if (it == m.end()) {
        schema(origin, at + ": missing field " + in_quotes(key));
      }
      *slot = string_at(*it, at + "/" + key, origin);
    }
    auto [it, fresh] = seen_morphisms.emplace(r.id, i);
    if (!fresh) {
      schema(origin, "morphisms: duplicate id " + in_quotes(r.id) +
                         " at /morphisms/" + std::to_string(it->second) +
                         "/id and " + at + "/id");
    }
    raw.morphisms.push_back(std::move(r));
  }

  raw.identities =
      string_map(field(doc, "identities", origin), "/identities", origin);

  const Json& composition = field(doc, "composition", origin);
  if (!composition.is_array()) {
    schema(origin, "/composition: expected an array");
  }
  for (std::size_t i = 0; i < composition.size(); ++i) {
    const std::string at = "/composition/" + std::to_string(i);
    const Json& t = composition[i];
    if (!t.is_array() || t.size() != 3) {
      schema(origin, at + ": expected a triple [g, f, g o f]");
    }
    std::array<std::string, 3> triple;
    for (std::size_t k = 0; k < 3; ++k) {
      triple[k] = string_at(t[k], at + "/" + std::to_string(k), origin);
    }
    raw.composition.push_back(std::move(triple));
  }
  return raw;
}

Json emit_category(const RawCategory& raw) {
  Json j;
  j["objects"] = raw.objects;
  Json morphisms = Json::array();
  for (const auto& m : raw.morphisms) {
    morphisms.push_back({{"id", m.id}, {"src", m.src}, {"tgt", m.tgt}});
  }
  j["morphisms"] = std::move(morphisms);
  j["identities"] = string_map_json(raw.identities);
  Json composition = Json::array();
  for (const auto& t : raw.composition) composition.push_back(t);
  j["composition"] = std::move(composition);
  return j;
}

FinCategory build_category(RawCategory raw) {
  std::unordered_map<std::string, const RawMorphism*> by_id;
  for (const auto& m : raw.morphisms) by_id.emplace(m.id, &m);
  std::set<std::pair<std::string, std::string>> given;
  for (const auto& [g, f, gf] : raw.composition) given.emplace(g, f);
  std::vector<std::array<std::string, 3>> implied;
  for (const auto& m : raw.morphisms) {
    auto src = raw.identities.find(m.src);
    auto tgt = raw.identities.find(m.tgt);
    if (tgt != raw.identities.end() && by_id.count(tgt->second) &&
        !given.count({tgt->second, m.id})) {
      implied.push_back({tgt->second, m.id, m.id});
      given.emplace(tgt->second, m.id);
    }
    if (src != raw.identities.end() && by_id.count(src->second) &&
        !given.count({m.id, src->second})) {
      implied.push_back({m.id, src->second, m.id});
      given.emplace(m.id, src->second);
    }
  }
  raw.composition.insert(raw.composition.end(), implied.begin(),
                         implied.end());
  return validate_category(raw);
}

FunctorDocument parse_functor(std::string_view text, const std::string& origin) {
  return parse_functor_json(parse_json(text, origin), origin);
}

FunctorDocument parse_functor_json(const Json& doc, const std::string& origin) {
  if (!doc.is_object()) schema(origin, "/: expected an object");
  only_fields(doc, {"domain", "codomain", "object_map", "morphism_map"}, "",
              origin);
  FunctorDocument out;
  out.domain = category_ref(field(doc, "domain", origin), "domain", origin);
  out.codomain =
      category_ref(field(doc, "codomain", origin), "codomain", origin);
  out.functor.object_map =
      string_map(field(doc, "object_map", origin), "/object_map", origin);
  out.functor.morphism_map =
      string_map(field(doc, "morphism_map", origin), "/morphism_map", origin);
  return out;
}

Json emit_functor(const FunctorDocument& doc) {
  Json j;
  j["domain"] = doc.domain;
  j["codomain"] = doc.codomain;
  j["object_map"] = string_map_json(doc.functor.object_map);
  j["morphism_map"] = string_map_json(doc.functor.morphism_map);
  return j;
}

FunctorDocument functor_document(const FinFunctor& f) {
  return {emit_category(f.domain().to_raw()),
          emit_category(f.codomain().to_raw()), f.to_raw()};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::ParseError, path.string() + ": cannot open file");
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

CategoryPtr load_category(const std::filesystem::path& path) {
  return share(build_category(parse_category(read_text(path), path.string())));
}

FinFunctor load_functor(const FunctorDocument& doc,
                        const std::filesystem::path& base_dir) {
  auto resolve = [&](const Json& ref, const char* name) {
    if (ref.is_string()) {
      return load_category(base_dir / ref.get<std::string>());
    }
    return share(build_category(parse_category_json(ref, name)));
  };
  return validate_functor(doc.functor, resolve(doc.domain, "domain"),
                          resolve(doc.codomain, "codomain"));
}

FinFunctor load_functor(const std::filesystem::path& path) {
  return load_functor(parse_functor(read_text(path), path.string()),
                      path.parent_path());
}

void to_json(Json& j, const FinitizedSize& s) {
  j = Json{{"objects", s.objects}, {"morphisms", s.morphisms}};
}

Json check_to_json(const CheckResult& c) {
  Json j;
  j["holds"] = c.ok;
  if (!c.ok) j["witness"] = c.witness;
  return j;
}

Json report_to_json(const DescentReport& r) {
  Json j;
  j["input"] = {
      {"domain",
       {{"objects", r.domain_objects}, {"morphisms", r.domain_morphisms}}},
      {"codomain",
       {{"objects", r.codomain_objects}, {"morphisms", r.codomain_morphisms}}}};
  j["fully_faithful"] = check_to_json(r.fully_faithful);
  j["lax_epi"] = check_to_json(r.lax_epi);
  j["cauchy_equivalence"] = r.cauchy_equivalence;

  const auto& c = r.codescent;
  Json codescent;
  codescent["nodes"] = c.nodes;
  codescent["generators"] = c.generators;
  codescent["relations"] = c.relations;
  codescent["relation_counts"] = {{"composition", c.relation_counts[0]},
                                  {"naturality", c.relation_counts[1]},
                                  {"unit", c.relation_counts[2]},
                                  {"cocycle", c.relation_counts[3]}};
  codescent["rules"] = c.rules;
  codescent["finitization"] = verdict_to_json(c.finitization);
  j["codescent"] = std::move(codescent);

  j["comparison_lax_epi"] = check_to_json(r.comparison_lax_epi);
  j["comparison_ff"] = verdict_to_json(r.comparison_ff);
  if (r.comparison_cauchy_equivalence) {
    j["comparison_cauchy_equivalence"] = *r.comparison_cauchy_equivalence;
  } else {
    j["comparison_cauchy_equivalence"] = nullptr;
  }
  j["descent_set"] = r.descent_set;
  j["effective_descent_set"] = verdict_to_json(r.effective_descent_set);
  j["notes"] = r.notes;
  if (r.oracle_bound) {
    Json oracle;
    oracle["bound"] = *r.oracle_bound;
    if (r.oracle_lan_ff) oracle["lan_ff"] = verdict_to_json(*r.oracle_lan_ff);
    if (r.oracle_consistency) {
      oracle["consistency"] = verdict_to_json(*r.oracle_consistency);
    }
    j["oracle"] = std::move(oracle);
  } else {
    j["oracle"] = nullptr;
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace catdesc
