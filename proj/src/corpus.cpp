#include "catdesc/corpus.hpp"

#include <atomic>
#include <random>
#include <thread>

#include "catdesc/cauchy.hpp"
#include "catdesc/enumerate.hpp"
#include "catdesc/laxepi.hpp"

namespace catdesc {
namespace {

CategoryPtr from_raw(RawCategory raw) {
  return share(build_category(std::move(raw)));
}

FinFunctor from_maps(const CategoryPtr& e, const CategoryPtr& b,
                     std::map<std::string, std::string> objects,
                     std::map<std::string, std::string> morphisms) {
  return validate_functor({std::move(objects), std::move(morphisms)}, e, b);
}

struct Outcome {
  bool ff = false;
  bool lax = false;
  bool cauchy = false;
  std::optional<DescentReport> report;
  std::optional<std::string> violation;
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

Outcome evaluate(const FinFunctor& p, const CorpusOptions& options,
                 const KaroubiEnvelope* domain_env,
                 const KaroubiEnvelope* codomain_env) {
  Outcome o;
  auto fail = [&](std::string what) {
    if (!o.violation) o.violation = std::move(what);
  };
  o.ff = is_fully_faithful(p);
  o.lax = is_lax_epimorphism(p);
  const FinFunctor cp =
      domain_env && codomain_env ? cauchy_map(p, *domain_env, *codomain_env)
                                 : cauchy_map(p);
  o.cauchy = is_equivalence(cp);
  if ((o.ff && o.lax) != o.cauchy) {
    fail("ff and lax epi (" + yes_no(o.ff && o.lax) +
         ") differ from cauchy_map equivalence (" + yes_no(o.cauchy) + ")");
  }
  if (o.lax != is_lax_epimorphism(cp)) {
    fail("lax epi of p differs from lax epi of cauchy_map(p)");
  }
  if (o.ff != is_fully_faithful(cp)) {
    fail("ff of p differs from ff of cauchy_map(p)");
  }
  if (!options.pipeline) return o;

  try {
    o.report = descent_verdict(p, options.limits);
  } catch (const Error& e) {
    fail(std::string("descent_verdict raised ") + e.what());
    return o;
  }
  const DescentReport& r = *o.report;
  const auto& eff = r.effective_descent_set;
  if (r.descent_set != r.comparison_lax_epi.ok) {
    fail("descent differs from lax epi of K");
  }
  if (eff.is_yes() !=
      (r.comparison_lax_epi.ok && r.comparison_ff.is_yes())) {
    fail("effective Yes differs from K lax epi and ff");
  }
  if (eff.is_undecided() !=
      (r.comparison_lax_epi.ok && r.comparison_ff.is_undecided())) {
    fail("effective Undecided differs from K ff Undecided");
  }
  if (r.comparison_cauchy_equivalence &&
      eff.is_yes() != *r.comparison_cauchy_equivalence) {
    fail("effective verdict differs from cauchy_map(K) equivalence");
  }
  if (is_equivalence(p) && !eff.is_yes()) {
    fail("equivalence without effective descent");
  }
  return o;
}

void tally(CorpusCounts& c, const Outcome& o) {
  ++c.functors;
  c.fully_faithful += o.ff;
  c.lax_epi += o.lax;
  c.cauchy_equivalence += o.cauchy;
  if (!o.report) return;
  const DescentReport& r = *o.report;
  c.descent += r.descent_set;
  c.effective_yes += r.effective_descent_set.is_yes();
  c.effective_no += r.effective_descent_set.is_no();
  c.effective_undecided += r.effective_descent_set.is_undecided();
  const auto& fin = r.codescent.finitization;
  c.finitized += fin.is_yes();
  c.finitization_infinite += fin.is_no();
  c.finitization_undecided += fin.is_undecided();
}

void add(CorpusCounts& a, const CorpusCounts& b) {
  a.functors += b.functors;
  a.fully_faithful += b.fully_faithful;
  a.lax_epi += b.lax_epi;
  a.cauchy_equivalence += b.cauchy_equivalence;
  a.descent += b.descent;
  a.effective_yes += b.effective_yes;
  a.effective_no += b.effective_no;
  a.effective_undecided += b.effective_undecided;
  a.finitized += b.finitized;
  a.finitization_infinite += b.finitization_infinite;
  a.finitization_undecided += b.finitization_undecided;
}

Json counts_to_json(const CorpusCounts& c) {
  return Json{{"functors", c.functors},
              {"fully_faithful", c.fully_faithful},
              {"lax_epi", c.lax_epi},
              {"cauchy_equivalence", c.cauchy_equivalence},
              {"descent", c.descent},
              {"effective_yes", c.effective_yes},
              {"effective_no", c.effective_no},
              {"effective_undecided", c.effective_undecided},
              {"finitized", c.finitized},
              {"finitization_infinite", c.finitization_infinite},
              {"finitization_undecided", c.finitization_undecided}};
}

// Partial result of one unit of work, merged in input order.
struct Partial {
  CorpusCounts counts;
  std::vector<Json> findings;
  std::optional<std::string> violation;
  std::optional<Json> counterexample;
};

void visit(Partial& part, const FinFunctor& p, const CorpusOptions& options,
           const KaroubiEnvelope* de, const KaroubiEnvelope* ce) {
  if (part.violation) return;
  Outcome o = evaluate(p, options, de, ce);
  tally(part.counts, o);
  if (o.violation) {
    part.violation = o.violation;
    part.counterexample = emit_functor(functor_document(p));
    return;
  }
  if (options.search_descent_not_effective && o.report &&
      o.report->descent_set && !o.report->effective_descent_set.is_yes()) {
    Json finding;
    finding["functor"] = emit_functor(functor_document(p));
    finding["effective"] = verdict_to_json(o.report->effective_descent_set);
    part.findings.push_back(std::move(finding));
  }
}

template <class Work>
void run_parallel(std::size_t items, std::size_t jobs, const Work& work) {
  jobs = std::max<std::size_t>(1, std::min(jobs, items));
  if (jobs == 1) {
    for (std::size_t i = 0; i < items; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < items; i = next++) work(i);
    });
  }
  for (auto& t : pool) t.join();
}

void merge(CorpusCounts& counts, CorpusResult& r, Partial& part) {
  add(counts, part.counts);
  for (auto& f : part.findings) r.findings.push_back(std::move(f));
  if (part.violation && !r.violation) {
    r.violation = part.violation;
    r.counterexample = part.counterexample;
  }
}

}  // namespace

CategoryPtr terminal_category() {
  RawCategory raw;
  raw.objects = {"*"};
  raw.morphisms = {{"id*", "*", "*"}};
  raw.identities = {{"*", "id*"}};
  return from_raw(raw);
}

CategoryPtr arrow_category() {
  RawCategory raw;
  raw.objects = {"0", "1"};
  raw.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"f", "0", "1"}};
  raw.identities = {{"0", "id0"}, {"1", "id1"}};
  return from_raw(raw);
}

CategoryPtr iso_category() {
  RawCategory raw;
  raw.objects = {"x", "y"};
  raw.morphisms = {{"idx", "x", "x"},
                   {"idy", "y", "y"},
                   {"i", "x", "y"},
                   {"j", "y", "x"}};
  raw.identities = {{"x", "idx"}, {"y", "idy"}};
  raw.composition = {{"j", "i", "idx"}, {"i", "j", "idy"}};
  return from_raw(raw);
}

CategoryPtr discrete_two_category() {
  RawCategory raw;
  raw.objects = {"a", "b"};
  raw.morphisms = {{"ida", "a", "a"}, {"idb", "b", "b"}};
  raw.identities = {{"a", "ida"}, {"b", "idb"}};
  return from_raw(raw);
}

CategoryPtr idempotent_category() {
  RawCategory raw;
  raw.objects = {"x"};
  raw.morphisms = {{"idx", "x", "x"}, {"e", "x", "x"}};
  raw.identities = {{"x", "idx"}};
  raw.composition = {{"e", "e", "e"}};
  return from_raw(raw);
}

std::vector<CuratedCase> curated_functors() {
  const CategoryPtr one = terminal_category();
  const CategoryPtr two = arrow_category();
  const CategoryPtr iso = iso_category();
  const CategoryPtr d2 = discrete_two_category();
  const CategoryPtr e = idempotent_category();
  std::vector<CuratedCase> out;
  out.push_back({"id_2", identity_functor(two)});
  out.push_back({"1->I", from_maps(one, iso, {{"*", "x"}}, {{"id*", "idx"}})});
  out.push_back({"D2->1", from_maps(d2, one, {{"a", "*"}, {"b", "*"}},
                                    {{"ida", "id*"}, {"idb", "id*"}})});
  out.push_back(
      {"2->1", from_maps(two, one, {{"0", "*"}, {"1", "*"}},
                         {{"id0", "id*"}, {"id1", "id*"}, {"f", "id*"}})});
  out.push_back({"1->D2", from_maps(one, d2, {{"*", "a"}}, {{"id*", "ida"}})});
  out.push_back({"1->E", from_maps(one, e, {{"*", "x"}}, {{"id*", "idx"}})});
  out.push_back({"1->2", from_maps(one, two, {{"*", "0"}}, {{"id*", "id0"}})});
  return out;
}

std::optional<std::string> check_corpus_invariants(
    const FinFunctor& p, const CorpusOptions& options,
    std::optional<DescentReport>* report) {
  Outcome o = evaluate(p, options, nullptr, nullptr);
  if (report) *report = std::move(o.report);
  return o.violation;
}

std::vector<FinFunctor> random_corpus(std::uint64_t seed, std::size_t count,
                                      std::size_t max_objects,
                                      std::size_t max_morphisms) {
  std::mt19937_64 rng(seed);
  std::vector<FinFunctor> out;
  while (out.size() < count) {
    const CategoryPtr e = random_category(rng, max_objects, max_morphisms);
    const CategoryPtr b = random_category(rng, max_objects, max_morphisms);
    if (auto f = random_functor(rng, e, b)) out.push_back(std::move(*f));
  }
  return out;
}

CorpusResult run_corpus(const CorpusOptions& options) {
  CorpusResult result;

  for (const auto& c : curated_functors()) {
    Partial part;
    CorpusOptions curated = options;
    curated.search_descent_not_effective = false;
    Outcome o = evaluate(c.functor, curated, nullptr, nullptr);
    std::string line = c.name + ": ff=" + yes_no(o.ff) +
                       " lax_epi=" + yes_no(o.lax) +
                       " cauchy_equivalence=" + yes_no(o.cauchy);
    if (o.report) {
      line += " descent=" + yes_no(o.report->descent_set) + " effective=" +
              std::string(o.report->effective_descent_set.tag());
    }
    result.curated_lines.push_back(std::move(line));
    if (o.violation && !result.violation) {
      result.violation = c.name + ": " + *o.violation;
      result.counterexample = emit_functor(functor_document(c.functor));
    }
  }

  if (options.exhaustive) {
    const auto cats =
        enumerate_categories(options.max_objects, options.max_morphisms);
    std::vector<KaroubiEnvelope> envs;
    for (const auto& c : cats) envs.push_back(karoubi_envelope(c));
    const std::size_t n = cats.size();
    std::vector<Partial> parts(n * n);
    run_parallel(n * n, options.jobs, [&](std::size_t i) {
      const std::size_t d = i / n, c = i % n;
      for_each_functor(cats[d], cats[c], [&](const FinFunctor& p) {
        visit(parts[i], p, options, &envs[d], &envs[c]);
        return !parts[i].violation;
      });
    });
    for (auto& part : parts) merge(result.exhaustive, result, part);
  }

  if (options.random_count > 0) {
    const auto functors =
        random_corpus(options.seed, options.random_count,
                      options.random_max_objects, options.random_max_morphisms);
    std::vector<Partial> parts(functors.size());
    run_parallel(functors.size(), options.jobs, [&](std::size_t i) {
      visit(parts[i], functors[i], options, nullptr, nullptr);
    });
    for (auto& part : parts) merge(result.random, result, part);
  }
  return result;
}

Json corpus_to_json(const CorpusResult& r, const CorpusOptions& options) {
  Json j;
  j["options"] = {{"exhaustive", options.exhaustive},
                  {"max_objects", options.max_objects},
                  {"max_morphisms", options.max_morphisms},
                  {"random_count", options.random_count},
                  {"random_max_objects", options.random_max_objects},
                  {"random_max_morphisms", options.random_max_morphisms},
                  {"seed", options.seed},
                  {"pipeline", options.pipeline},
                  {"max_word_len", options.limits.max_word_len},
                  {"max_rules", options.limits.max_rules}};
  j["curated"] = r.curated_lines;
  j["exhaustive"] = counts_to_json(r.exhaustive);
  j["random"] = counts_to_json(r.random);
  CorpusCounts total = r.exhaustive;
  add(total, r.random);
  if (options.pipeline && total.functors > 0) {
    j["finitization_undecided_fraction"] =
        static_cast<double>(total.finitization_undecided) /
        static_cast<double>(total.functors);
  }
  if (options.search_descent_not_effective) {
    j["search"] = {{"mode", "descent-not-effective"},
                   {"findings", r.findings}};
  }
  j["invariants"] = r.ok() ? "pass" : "fail";
  if (r.violation) {
    j["violation"] = *r.violation;
    j["counterexample"] = *r.counterexample;
  }
  return j;
}

}  // namespace catdesc
