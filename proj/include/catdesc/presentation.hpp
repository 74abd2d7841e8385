#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "catdesc/fincat.hpp"
#include "catdesc/verdict.hpp"

namespace catdesc {

using GenId = std::uint32_t;

/// A path in the generating graph. Steps are stored in application order
/// (steps[0] is applied first); an empty path denotes the identity of
/// `source`.
struct Path {
  ObjId source = 0;
  std::vector<GenId> steps;

  bool empty() const noexcept { return steps.empty(); }
  std::size_t length() const noexcept { return steps.size(); }

  friend bool operator==(const Path&, const Path&) = default;
};

/// Length first, then lexicographic on generator index.
bool shortlex_less(const Path& a, const Path& b);

struct Generator {
  std::string name;
  ObjId source;
  ObjId target;
};

struct Relation {
  Path lhs;
  Path rhs;
  std::string label;
};

/// A finitely presented category: free category on a finite graph modulo
/// relations between parallel paths.
struct Presentation {
  std::vector<std::string> nodes;
  std::vector<Generator> generators;
  std::vector<Relation> relations;

  ObjId target(const Path& p) const;
  /// `second` after `first`; requires target(first) == second.source.
  Path then(const Path& first, const Path& second) const;
  Path single(GenId g) const { return Path{generators[g].source, {g}}; }
  Path identity(ObjId x) const { return Path{x, {}}; }
  bool well_typed(const Path& p) const;
  /// Composition order, e.g. "g o f"; empty paths print as "id[x]".
  std::string format(const Path& p) const;
};

/// Throws Error(InvalidPresentation) on dangling endpoints, ill-typed paths
/// or non-parallel relations.
void validate(const Presentation& p);

/// Nodes = objects, generators = non-identity morphisms, one relation per
/// composable pair of non-identity morphisms (identities become empty
/// paths).
Presentation presentation_of(const FinCategory& c);

struct Limits {
  std::size_t max_rules = 10000;
  std::size_t max_word_len = 16;
  /// Cap on automaton states / enumerated normal forms per source node.
  std::size_t max_states = 200000;
};

enum class Completion { Complete, Incomplete };

/// Length-lex oriented path rewriting rules produced by completion.
class RewriteSystem {
 public:
  struct Rule {
    std::u16string lhs;
    std::u16string rhs;
  };

  const Presentation& presentation() const { return *presentation_; }
  std::shared_ptr<const Presentation> presentation_ptr() const {
    return presentation_;
  }
  const std::vector<Rule>& rules() const { return rules_; }
  Completion status() const { return status_; }
  bool complete() const { return status_ == Completion::Complete; }
  /// Which bound stopped completion (empty when complete).
  const std::string& bound() const { return bound_; }
  std::size_t max_lhs_length() const { return max_lhs_; }

  /// An irreducible form of p under the current rules; unique only when the
  /// system is complete.
  Path reduce(const Path& p) const;
  std::u16string reduce_word(std::u16string w) const;
  /// Length of a rule left-hand side that is a suffix of w, or 0.
  std::size_t suffix_match(std::u16string_view w) const;

 private:
  friend RewriteSystem complete_rewriting(std::shared_ptr<const Presentation>,
                                          const Limits&);
  RewriteSystem() = default;

  std::shared_ptr<const Presentation> presentation_;
  std::vector<Rule> rules_;
  std::map<std::u16string, std::size_t, std::less<>> index_;
  std::size_t max_lhs_ = 0;
  Completion status_ = Completion::Incomplete;
  std::string bound_;
};

/// Knuth–Bendix completion on paths under length-lex order (generator
/// declaration order). Stops with status Incomplete when a rule longer than
/// limits.max_word_len or more than limits.max_rules rules would be needed.
RewriteSystem complete_rewriting(std::shared_ptr<const Presentation> p,
                                 const Limits& limits = {});

/// Throws Error(IncompleteSystem) unless r is complete.
Path normal_form(const RewriteSystem& r, const Path& p);

/// Normal forms x → y, shortlex sorted. No(witness) when the set is proven
/// infinite (a pumpable cycle of normal forms); Undecided when completion
/// failed or a normal form exceeds limits.max_word_len.
Verdict<std::vector<Path>> hom_set(const RewriteSystem& r, ObjId x, ObjId y,
                                   const Limits& limits = {});
Verdict<std::vector<Path>> hom_set(std::shared_ptr<const Presentation> p,
                                   ObjId x, ObjId y, const Limits& limits = {});

/// hom_set(r, x, y) for every node y, sharing one automaton.
std::vector<Verdict<std::vector<Path>>> hom_sets_from(const RewriteSystem& r,
                                                      ObjId x,
                                                      const Limits& limits = {});

struct Finitization {
  CategoryPtr category;
  /// normal_forms[m] is the normal form represented by morphism m.
  std::vector<Path> normal_forms;
  /// Morphism of `category` holding the normal form of each generator.
  std::vector<MorId> generator_image;
};

Verdict<Finitization> try_finitize(const RewriteSystem& r,
                                   const Limits& limits = {});
Verdict<Finitization> try_finitize(std::shared_ptr<const Presentation> p,
                                   const Limits& limits = {});

}  // namespace catdesc
