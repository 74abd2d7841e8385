// catdesc: descent verdicts for functors between finite categories.
//
// Exit codes: 0 yes/valid, 1 no, 2 undecided, 3 invalid input,
// 4 internal consistency violation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "catdesc/cauchy.hpp"
#include "catdesc/codescent.hpp"
#include "catdesc/corpus.hpp"
#include "catdesc/descent.hpp"
#include "catdesc/io.hpp"
#include "catdesc/kernel.hpp"
#include "catdesc/laxepi.hpp"
#include "catdesc/oracle.hpp"

namespace {

using namespace catdesc;

enum Exit { kYes = 0, kNo = 1, kUndecided = 2, kInvalid = 3, kViolation = 4 };

struct Flags {
  std::string file;
  std::string property;
  std::size_t bound = 2;
  bool bound_given = false;
  bool invertible_sigma = false;
  Limits limits;
  std::string json_out;
  bool exhaustive = false;
  std::size_t max_objects = 2;
  std::size_t max_morphisms = 5;
  std::size_t random_count = 500;
  std::uint64_t seed = 1;
  std::string search;
  bool no_pipeline = false;
  std::size_t jobs = 1;
};

template <class T>
int exit_of(const Verdict<T>& v) {
  return v.is_yes() ? kYes : v.is_no() ? kNo : kUndecided;
}

std::string line_of(const CheckResult& c) {
  return c.ok ? "true" : "false (" + c.witness + ")";
}

template <class T>
std::string line_of(const Verdict<T>& v) {
  if (v.is_yes()) return "Yes";
  if (v.is_no()) return "No (" + v.witness() + ")";
  return "Undecided (" + v.bound() + ")";
}

void write_json(const Flags& f, const Json& j) {
  if (f.json_out.empty()) return;
  std::ofstream out(f.json_out, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::ParseError, f.json_out + ": cannot write file");
  }
  out << dump(j);
}

int cmd_validate(const Flags& f) {
  const Json doc = Json::parse(read_text(f.file), nullptr, false);
  if (doc.is_object() && doc.contains("domain")) {
    const FinFunctor p = load_functor(f.file);
    std::cout << "valid functor: " << p.domain().num_objects() << " objects, "
              << p.domain().num_morphisms() << " morphisms -> "
              << p.codomain().num_objects() << " objects, "
              << p.codomain().num_morphisms() << " morphisms\n";
    write_json(f, emit_functor(functor_document(p)));
  } else {
    const CategoryPtr c = load_category(f.file);
    std::cout << "valid category: " << c->num_objects() << " objects, "
              << c->num_morphisms() << " morphisms\n";
    write_json(f, emit_category(c->to_raw()));
  }
  return kYes;
}

int cmd_check(const Flags& f) {
  const FinFunctor p = load_functor(f.file);
  CheckResult result;
  if (f.property == "ff") {
    result = check_fully_faithful(p);
  } else if (f.property == "laxepi") {
    result = check_lax_epimorphism(p);
  } else {
    result = check_fully_faithful(p);
    if (result) result = check_essentially_surjective(p);
  }
  std::cout << f.property << ": " << line_of(result) << "\n";
  Json j;
  j["property"] = f.property;
  j["result"] = check_to_json(result);
  write_json(f, j);
  return result ? kYes : kNo;
}

int cmd_karoubi(const Flags& f) {
  const CategoryPtr c = load_category(f.file);
  const KaroubiEnvelope env = karoubi_envelope(c);
  const bool complete = is_equivalence(env.unit);
  std::cout << "envelope: " << env.completion->num_objects() << " objects, "
            << env.completion->num_morphisms() << " morphisms\n"
            << "cauchy complete: " << (complete ? "true" : "false") << "\n";
  for (ObjId x = 0; x < env.completion->num_objects(); ++x) {
    std::cout << "  " << env.completion->object_name(x) << "\n";
  }
  Json j;
  j["cauchy_complete"] = complete;
  j["envelope"] = emit_category(env.completion->to_raw());
  write_json(f, j);
  return kYes;
}

int cmd_codescent(const Flags& f) {
  const FinFunctor p = load_functor(f.file);
  const CodescentFactorization c = codescent_presentation(higher_kernel(p));
  if (auto ok = check_factorization(c); !ok) {
    throw Error(ErrorKind::ConsistencyViolation, ok.witness);
  }
  const Presentation& pres = *c.presentation;
  const RewriteSystem rw = complete_rewriting(c.presentation, f.limits);
  const auto fin = finitize_comparison(c, rw, f.limits);
  const auto& n = c.relation_counts;
  std::cout << "nodes: " << pres.nodes.size() << "\n"
            << "generators: " << pres.generators.size() << "\n"
            << "relations: " << pres.relations.size() << " (composition "
            << n[0] << ", naturality " << n[1] << ", unit " << n[2]
            << ", cocycle " << n[3] << ")\n"
            << "rules: " << rw.rules().size() << "\n"
            << "comparison lax epi: "
            << line_of(check_lax_epimorphism_presented(c.comparison)) << "\n";
  Json j;
  j["nodes"] = pres.nodes;
  Json gens = Json::array();
  for (const auto& g : pres.generators) {
    gens.push_back({{"name", g.name},
                    {"src", pres.nodes[g.source]},
                    {"tgt", pres.nodes[g.target]}});
  }
  j["generators"] = std::move(gens);
  Json rels = Json::array();
  for (const auto& r : pres.relations) {
    rels.push_back({{"label", r.label},
                    {"lhs", pres.format(r.lhs)},
                    {"rhs", pres.format(r.rhs)}});
  }
  j["relations"] = std::move(rels);
  j["rules"] = rw.rules().size();
  if (fin.is_yes()) {
    const auto& k = fin.value().comparison;
    std::cout << "finitization: Yes (" << k.domain().num_objects()
              << " objects, " << k.domain().num_morphisms() << " morphisms)\n";
    j["finitization"] = {{"verdict", "Yes"},
                         {"category", emit_category(k.domain().to_raw())},
                         {"comparison", k.to_raw().morphism_map}};
  } else {
    std::cout << "finitization: " << line_of(fin) << "\n";
    j["finitization"] = verdict_to_json(fin.template forward<bool>());
  }
  write_json(f, j);
  return exit_of(fin);
}

OracleOptions oracle_options(const Flags& f) {
  OracleOptions o;
  o.bound = f.bound;
  o.require_invertible_sigma = f.invertible_sigma;
  return o;
}

void print_report(const DescentReport& r) {
  std::cout << "e: " << r.domain_objects << " objects, " << r.domain_morphisms
            << " morphisms\n"
            << "b: " << r.codomain_objects << " objects, "
            << r.codomain_morphisms << " morphisms\n"
            << "fully faithful: " << line_of(r.fully_faithful) << "\n"
            << "lax epimorphism: " << line_of(r.lax_epi) << "\n"
            << "cauchy_map equivalence: "
            << (r.cauchy_equivalence ? "true" : "false") << "\n"
            << "codescent: " << r.codescent.nodes << " nodes, "
            << r.codescent.generators << " generators, "
            << r.codescent.relations << " relations, finitization "
            << line_of(r.codescent.finitization) << "\n"
            << "K lax epimorphism: " << line_of(r.comparison_lax_epi) << "\n"
            << "K fully faithful: " << line_of(r.comparison_ff) << "\n"
            << "descent: " << (r.descent_set ? "true" : "false") << "\n"
            << "effective descent: " << line_of(r.effective_descent_set)
            << "\n";
  if (r.oracle_bound) {
    std::cout << "oracle (n = " << *r.oracle_bound << "): Lan ff "
              << line_of(*r.oracle_lan_ff) << ", consistency "
              << line_of(*r.oracle_consistency) << "\n";
  }
  for (const auto& note : r.notes) std::cout << "note: " << note << "\n";
}

int cmd_descent(const Flags& f) {
  const FinFunctor p = load_functor(f.file);
  DescentReport r = descent_verdict(p, f.limits);
  if (f.bound_given) attach_oracle(r, p, oracle_options(f));
  r = transfer_report(std::move(r));
  print_report(r);
  write_json(f, report_to_json(r));
  return exit_of(r.effective_descent_set);
}

int cmd_oracle(const Flags& f) {
  const FinFunctor p = load_functor(f.file);
  const OracleOptions o = oracle_options(f);
  DescentReport r = descent_verdict(p, f.limits);
  attach_oracle(r, p, o);
  const auto category = oracle_descent_category(p, o);
  std::cout << "bound: " << o.bound << "\n"
            << "Lan ff probe: " << line_of(*r.oracle_lan_ff) << "\n"
            << "descent data: " << category.data.size() << "\n"
            << "presheaves on b: " << category.codomain_presheaves.size()
            << "\n"
            << "comparison faithful: " << line_of(category.comparison_faithful)
            << "\n"
            << "comparison full: " << line_of(category.comparison_full) << "\n"
            << "data outside the comparison image: "
            << category.unmatched.size() << "\n"
            << "consistency: " << line_of(*r.oracle_consistency) << "\n";
  Json j;
  j["bound"] = o.bound;
  j["invertible_sigma"] = o.require_invertible_sigma;
  j["lan_ff"] = verdict_to_json(*r.oracle_lan_ff);
  j["descent_data"] = category.data.size();
  j["codomain_presheaves"] = category.codomain_presheaves.size();
  j["comparison_faithful"] = check_to_json(category.comparison_faithful);
  j["comparison_full"] = check_to_json(category.comparison_full);
  Json unmatched = Json::array();
  for (std::size_t i : category.unmatched) {
    unmatched.push_back(describe(category.data[i]));
  }
  j["unmatched"] = std::move(unmatched);
  j["consistency"] = verdict_to_json(*r.oracle_consistency);
  write_json(f, j);
  return exit_of(*r.oracle_consistency);
}

int cmd_corpus(const Flags& f) {
  if (!f.search.empty() && f.search != "descent-not-effective") {
    throw Error(ErrorKind::SchemaError, "--search: unknown mode " + f.search);
  }
  CorpusOptions o;
  o.exhaustive = f.exhaustive;
  o.max_objects = f.max_objects;
  o.max_morphisms = f.max_morphisms;
  o.random_count = f.random_count;
  o.seed = f.seed;
  o.pipeline = !f.no_pipeline;
  o.search_descent_not_effective = !f.search.empty();
  o.limits = f.limits;
  o.jobs = f.jobs;
  const CorpusResult r = run_corpus(o);
  for (const auto& line : r.curated_lines) std::cout << line << "\n";
  auto counts = [](const char* name, const CorpusCounts& c) {
    std::cout << name << ": " << c.functors << " functors, "
              << c.fully_faithful << " ff, " << c.lax_epi << " lax epi, "
              << c.cauchy_equivalence << " cauchy equivalences, " << c.descent
              << " descent, effective " << c.effective_yes << "/"
              << c.effective_no << "/" << c.effective_undecided
              << " (yes/no/undecided), finitized " << c.finitized << "\n";
  };
  if (o.exhaustive) counts("exhaustive", r.exhaustive);
  if (o.random_count > 0) counts("random", r.random);
  if (o.search_descent_not_effective) {
    std::cout << "descent-not-effective findings: " << r.findings.size()
              << "\n";
  }
  write_json(f, corpus_to_json(r, o));
  if (!r.ok()) {
    std::cerr << "invariant violation: " << *r.violation << "\n"
              << "counterexample:\n"
              << dump(*r.counterexample);
    return kViolation;
  }
  std::cout << "invariants: pass\n";
  return kYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Descent and effective descent of functors between finite "
               "categories"};
  app.require_subcommand(1);
  Flags f;

  auto limits = [&](CLI::App* sub) {
    sub->add_option("--max-word-len", f.limits.max_word_len,
                    "Longest word explored by the rewriting engine");
    sub->add_option("--max-rules", f.limits.max_rules,
                    "Rule cap for completion");
    sub->add_option("--json-out", f.json_out, "Write the JSON report here");
  };
  auto oracle = [&](CLI::App* sub) {
    sub->add_option_function<std::size_t>(
        "--bound",
        [&](std::size_t n) {
          f.bound = n;
          f.bound_given = true;
        },
        "Oracle set-size bound");
    sub->add_flag("--invertible-sigma", f.invertible_sigma,
                  "Oracle descent data with invertible sigma only");
  };

  auto* validate = app.add_subcommand("validate", "Validate a document");
  validate->add_option("file", f.file)->required();
  limits(validate);

  auto* check = app.add_subcommand("check", "ff, lax epimorphism or equivalence");
  check->add_option("property", f.property)
      ->required()
      ->check(CLI::IsMember({"ff", "laxepi", "equiv"}));
  check->add_option("file", f.file)->required();
  limits(check);

  auto* karoubi = app.add_subcommand("karoubi", "Karoubi envelope");
  karoubi->add_option("file", f.file)->required();
  limits(karoubi);

  auto* codescent = app.add_subcommand("codescent", "Codescent presentation");
  codescent->add_option("file", f.file)->required();
  limits(codescent);

  auto* descent = app.add_subcommand("descent", "Descent verdicts");
  descent->add_option("file", f.file)->required();
  limits(descent);
  oracle(descent);

  auto* oracle_cmd = app.add_subcommand("oracle", "Bounded presheaf oracles");
  oracle_cmd->add_option("file", f.file)->required();
  limits(oracle_cmd);
  oracle(oracle_cmd);

  auto* corpus = app.add_subcommand("corpus", "Curated and swept corpus");
  limits(corpus);
  corpus->add_flag("--exhaustive", f.exhaustive,
                   "Sweep every functor between small categories");
  corpus->add_option("--max-objects", f.max_objects);
  corpus->add_option("--max-morphisms", f.max_morphisms);
  corpus->add_option("--random", f.random_count, "Seeded random functors");
  corpus->add_option("--seed", f.seed);
  corpus->add_option("--search", f.search, "descent-not-effective");
  corpus->add_flag("--no-pipeline", f.no_pipeline,
                   "Cauchy checks only, no descent pipeline");
  corpus->add_option("--jobs", f.jobs, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kYes : kInvalid;
  }

  try {
    if (*validate) return cmd_validate(f);
    if (*check) return cmd_check(f);
    if (*karoubi) return cmd_karoubi(f);
    if (*codescent) return cmd_codescent(f);
    if (*descent) return cmd_descent(f);
    if (*oracle_cmd) return cmd_oracle(f);
    if (*corpus) return cmd_corpus(f);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::ConsistencyViolation:
        return kViolation;
      case ErrorKind::ResourceExceeded:
        return kUndecided;
      default:
        return kInvalid;
    }
  }
  return kInvalid;
}
