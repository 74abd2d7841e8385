#include "catdesc/descent.hpp"

#include "catdesc/cauchy.hpp"
#include "catdesc/kernel.hpp"
#include "catdesc/laxepi.hpp"

namespace catdesc {
namespace {

[[noreturn]] void violation(const std::string& what) {
  throw Error(ErrorKind::ConsistencyViolation, what);
}

}  // namespace

DescentReport descent_verdict(const FinFunctor& p, const Limits& limits) {
  DescentReport r;
  r.domain_objects = p.domain().num_objects();
  r.domain_morphisms = p.domain().num_morphisms();
  r.codomain_objects = p.codomain().num_objects();
  r.codomain_morphisms = p.codomain().num_morphisms();

  r.fully_faithful = check_fully_faithful(p);
  r.lax_epi = check_lax_epimorphism(p);
  const KaroubiEnvelope base_env = karoubi_envelope(p.codomain_ptr());
  r.cauchy_equivalence =
      is_equivalence(cauchy_map(p, karoubi_envelope(p.domain_ptr()), base_env));
  if ((r.fully_faithful.ok && r.lax_epi.ok) != r.cauchy_equivalence) {
    violation("ff and lax epi disagree with the Karoubi route for p");
  }

  const KernelPairDiagram d = higher_kernel(p);
  if (auto s = validate_simplicial(d); !s) {
    violation("higher kernel: " + s.witness);
  }
  const CodescentFactorization c = codescent_presentation(d);
  if (auto f = check_factorization(c); !f) {
    violation("codescent factorization: " + f.witness);
  }
  r.codescent.nodes = c.presentation->nodes.size();
  r.codescent.generators = c.presentation->generators.size();
  r.codescent.relations = c.presentation->relations.size();
  r.codescent.relation_counts = c.relation_counts;

  r.comparison_lax_epi = check_lax_epimorphism_presented(c.comparison);
  const RewriteSystem rewriting = complete_rewriting(c.presentation, limits);
  r.codescent.rules = rewriting.rules().size();
  r.comparison_ff = comparison_ff(c, rewriting, limits);

  auto fin = finitize_comparison(c, rewriting, limits);
  if (fin.is_yes()) {
    const FinFunctor& k = fin.value().comparison;
    r.codescent.finitization = Verdict<FinitizedSize>::yes(
        {k.domain().num_objects(), k.domain().num_morphisms()});
    const bool lax = is_lax_epimorphism(k);
    if (lax != r.comparison_lax_epi.ok) {
      violation("lax epimorphism of K: generator congruence gives " +
                std::string(r.comparison_lax_epi.ok ? "true" : "false") +
                ", finitized K gives " + (lax ? "true" : "false"));
    }
    const bool ff = is_fully_faithful(k);
    if (!r.comparison_ff.is_undecided() && r.comparison_ff.is_yes() != ff) {
      violation("hom-set comparison and finitized K disagree on ff");
    }
    r.comparison_cauchy_equivalence = is_equivalence(
        cauchy_map(k, karoubi_envelope(k.domain_ptr()), base_env));
    if ((lax && ff) != *r.comparison_cauchy_equivalence) {
      violation("K: lax epi and ff disagree with cauchy_map(K) equivalence");
    }
  } else {
    r.codescent.finitization = fin.forward<FinitizedSize>();
    if (fin.is_no() && r.comparison_ff.is_yes()) {
      violation("CoDesc(p) infinite but K fully faithful into a finite b");
    }
  }

  r.descent_set = r.comparison_lax_epi.ok;
  if (!r.comparison_lax_epi.ok) {
    r.effective_descent_set =
        Verdict<bool>::no("K is not a lax epimorphism: " +
                          r.comparison_lax_epi.witness);
  } else if (r.comparison_ff.is_no()) {
    r.effective_descent_set = Verdict<bool>::no(
        "K is not fully faithful: " + r.comparison_ff.witness());
  } else {
    r.effective_descent_set = r.comparison_ff;
  }
  r.notes.push_back(
      "theta(u,v) is oriented u -> v; the unit and cocycle relations make "
      "every theta invertible, so no verdict depends on this choice");
  return r;
}

DescentReport transfer_report(DescentReport r) {
  const auto& e = r.effective_descent_set;
  if (e.is_yes()) {
    r.notes.push_back(
        "effective CAT(-,D)-descent holds for all Cauchy-complete D with Set "
        "-> D fully faithful");
  } else if (e.is_no()) {
    r.notes.push_back(
        "effective CAT(-,D)-descent fails for all Cauchy-complete D with Set "
        "-> D fully faithful");
  } else {
    r.notes.push_back(
        "effective CAT(-,D)-descent for Cauchy-complete D with Set -> D fully "
        "faithful is undecided (" + e.bound() + ")");
  }
  r.notes.push_back(
      "CAT(-,Cat)-descent and effective CAT(-,Cat)-descent coincide with the "
      "CAT(-,Set) verdicts: descent " +
      std::string(r.descent_set ? "true" : "false") + ", effective " +
      std::string(e.tag()));
  return r;
}

}  // namespace catdesc
