#include "catdesc/presentation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

namespace catdesc {
namespace {

std::u16string to_word(const Path& p) {
  std::u16string w;
  w.reserve(p.steps.size());
  for (GenId g : p.steps) w.push_back(static_cast<char16_t>(g));
  return w;
}

Path to_path(ObjId source, std::u16string_view w) {
  Path p{source, {}};
  p.steps.reserve(w.size());
  for (char16_t c : w) p.steps.push_back(static_cast<GenId>(c));
  return p;
}

bool shortlex_less(std::u16string_view a, std::u16string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

bool shortlex_less(const Path& a, const Path& b) {
  if (a.steps.size() != b.steps.size()) {
    return a.steps.size() < b.steps.size();
  }
  if (a.steps != b.steps) return a.steps < b.steps;
  return a.source < b.source;
}

// ---------------------------------------------------------------------------
// Presentation

ObjId Presentation::target(const Path& p) const {
  return p.steps.empty() ? p.source : generators[p.steps.back()].target;
}

Path Presentation::then(const Path& first, const Path& second) const {
  Path out = first;
  out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
  return out;
}

bool Presentation::well_typed(const Path& p) const {
  if (p.source >= nodes.size()) return false;
  ObjId at = p.source;
  for (GenId g : p.steps) {
    if (g >= generators.size() || generators[g].source != at) return false;
    at = generators[g].target;
  }
  return true;
}

std::string Presentation::format(const Path& p) const {
  if (p.steps.empty()) return "id[" + nodes.at(p.source) + "]";
  std::string out;
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) {
    if (!out.empty()) out += " o ";
    out += generators.at(*it).name;
  }
  return out;
}

void validate(const Presentation& p) {
  if (p.generators.size() >= 0xffff) {
    throw Error(ErrorKind::InvalidPresentation, "too many generators");
  }
  std::set<std::string> seen;
  for (const auto& node : p.nodes) {
    if (!seen.insert(node).second) {
      throw Error(ErrorKind::DuplicateIdentifier,
                  "node '" + node + "' declared twice");
    }
  }
  for (const auto& g : p.generators) {
    if (g.source >= p.nodes.size() || g.target >= p.nodes.size()) {
      throw Error(ErrorKind::InvalidPresentation,
                  "generator '" + g.name + "' has an undeclared endpoint");
    }
  }
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const auto& r = p.relations[i];
    const std::string name =
        r.label.empty() ? "relation #" + std::to_string(i) : r.label;
    if (!p.well_typed(r.lhs) || !p.well_typed(r.rhs)) {
      throw Error(ErrorKind::InvalidPresentation, name + " is not well typed");
    }
    if (r.lhs.source != r.rhs.source || p.target(r.lhs) != p.target(r.rhs)) {
      throw Error(ErrorKind::InvalidPresentation,
                  name + " relates non-parallel paths");
    }
  }
}

Presentation presentation_of(const FinCategory& c) {
  Presentation p;
  for (ObjId x = 0; x < c.num_objects(); ++x) p.nodes.push_back(c.object_name(x));
  std::vector<GenId> gen(c.num_morphisms(), kNone);
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    gen[m] = static_cast<GenId>(p.generators.size());
    p.generators.push_back({c.morphism_name(m), c.source(m), c.target(m)});
  }
  auto path = [&](MorId m) {
    return c.is_identity(m) ? Path{c.source(m), {}}
                            : Path{c.source(m), {gen[m]}};
  };
  for (MorId f = 0; f < c.num_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    for (ObjId z = 0; z < c.num_objects(); ++z) {
      for (MorId g : c.hom(c.target(f), z)) {
        if (c.is_identity(g)) continue;
        p.relations.push_back({Path{c.source(f), {gen[f], gen[g]}},
                               path(c.compose(g, f)),
                               c.morphism_name(g) + " o " + c.morphism_name(f)});
      }
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Rewriting

std::size_t RewriteSystem::suffix_match(std::u16string_view w) const {
  const std::size_t limit = std::min(max_lhs_, w.size());
  for (std::size_t len = 1; len <= limit; ++len) {
    if (index_.find(w.substr(w.size() - len)) != index_.end()) return len;
  }
  return 0;
}

std::u16string RewriteSystem::reduce_word(std::u16string w) const {
  if (index_.empty()) return w;
  std::u16string out;
  out.reserve(w.size());
  std::u16string rest(w.rbegin(), w.rend());
  while (!rest.empty()) {
    out.push_back(rest.back());
    rest.pop_back();
    const std::u16string_view view(out);
    const std::size_t limit = std::min(max_lhs_, out.size());
    for (std::size_t len = 1; len <= limit; ++len) {
      auto it = index_.find(view.substr(view.size() - len));
      if (it == index_.end()) continue;
      const std::u16string& rhs = rules_[it->second].rhs;
      out.resize(out.size() - len);
      rest.append(rhs.rbegin(), rhs.rend());
      break;
    }
  }
  return out;
}

Path RewriteSystem::reduce(const Path& p) const {
  return to_path(p.source, reduce_word(to_word(p)));
}

RewriteSystem complete_rewriting(std::shared_ptr<const Presentation> p,
                                 const Limits& limits) {
  validate(*p);
  RewriteSystem r;
  r.presentation_ = std::move(p);

  std::vector<bool> active;
  std::size_t active_count = 0;
  std::deque<std::pair<std::u16string, std::u16string>> pending;
  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& rel : r.presentation_->relations) {
    pending.emplace_back(to_word(rel.lhs), to_word(rel.rhs));
  }

  auto contains = [](const std::u16string& hay, const std::u16string& needle) {
    return hay.find(needle) != std::u16string::npos;
  };

  bool failed = false;
  while (!failed) {
    while (!pending.empty() && !failed) {
      auto [a, b] = std::move(pending.front());
      pending.pop_front();
      a = r.reduce_word(std::move(a));
      b = r.reduce_word(std::move(b));
      if (a == b) continue;
      if (shortlex_less(a, b)) std::swap(a, b);
      if (a.size() > limits.max_word_len) {
        r.bound_ = "max-word-len " + std::to_string(limits.max_word_len) +
                   ": completion needs a rule of length " +
                   std::to_string(a.size());
        failed = true;
        break;
      }
      if (active_count + 1 > limits.max_rules) {
        r.bound_ = "max-rules " + std::to_string(limits.max_rules) +
                   ": completion needs more rules";
        failed = true;
        break;
      }
      const std::size_t id = r.rules_.size();
      r.rules_.push_back({a, b});
      active.push_back(true);
      ++active_count;
      r.index_.emplace(a, id);
      r.max_lhs_ = std::max(r.max_lhs_, a.size());
      // Interreduce against the new rule.
      for (std::size_t j = 0; j < id; ++j) {
        if (!active[j]) continue;
        auto& rule = r.rules_[j];
        if (contains(rule.lhs, a)) {
          active[j] = false;
          --active_count;
          r.index_.erase(rule.lhs);
          pending.emplace_back(rule.lhs, rule.rhs);
        } else if (contains(rule.rhs, a)) {
          rule.rhs = r.reduce_word(rule.rhs);
        }
      }
      for (std::size_t j = 0; j <= id; ++j) {
        if (active[j]) pairs.emplace_back(id, j);
      }
    }
    if (failed || pairs.empty()) break;

    const auto [i, j] = pairs.front();
    pairs.pop_front();
    if (!active[i] || !active[j]) continue;
    auto overlaps = [&](std::size_t first, std::size_t second) {
      const auto& l1 = r.rules_[first].lhs;
      const auto& l2 = r.rules_[second].lhs;
      const std::size_t max_k = std::min(l1.size(), l2.size());
      for (std::size_t k = 1; k < max_k; ++k) {
        if (l1.compare(l1.size() - k, k, l2, 0, k) != 0) continue;
        std::u16string via_first = r.rules_[first].rhs + l2.substr(k);
        std::u16string via_second =
            l1.substr(0, l1.size() - k) + r.rules_[second].rhs;
        pending.emplace_back(std::move(via_first), std::move(via_second));
      }
    };
    overlaps(i, j);
    if (i != j) overlaps(j, i);
  }

  // Keep active rules only, in creation order.
  std::vector<RewriteSystem::Rule> kept;
  for (std::size_t j = 0; j < r.rules_.size(); ++j) {
    if (active[j]) kept.push_back(std::move(r.rules_[j]));
  }
  r.rules_ = std::move(kept);
  r.index_.clear();
  r.max_lhs_ = 0;
  for (std::size_t j = 0; j < r.rules_.size(); ++j) {
    r.index_.emplace(r.rules_[j].lhs, j);
    r.max_lhs_ = std::max(r.max_lhs_, r.rules_[j].lhs.size());
  }
  if (!failed) {
    for (auto& rule : r.rules_) rule.rhs = r.reduce_word(rule.rhs);
    r.status_ = Completion::Complete;
  }
  return r;
}

Path normal_form(const RewriteSystem& r, const Path& p) {
  if (!r.complete()) {
    throw Error(ErrorKind::IncompleteSystem,
                "normal form requested from an incomplete system (" +
                    r.bound() + ")");
  }
  return r.reduce(p);
}

// ---------------------------------------------------------------------------
// Normal-form automaton
//
// Normal forms are exactly the words avoiding every left-hand side as a
// factor. Whether w·a stays normal depends only on the last (L-1) letters of
// w, where L is the longest left-hand side, so normal forms from a fixed
// source are the walks of a finite automaton whose states are those
// suffixes. Hom-sets are infinite exactly when a cycle of this automaton can
// reach the requested target.

namespace {

struct Automaton {
  std::vector<ObjId> node;
  std::vector<std::u16string> suffix;
  std::vector<std::vector<std::pair<GenId, std::size_t>>> edges;
  std::vector<std::pair<std::size_t, GenId>> parent;  // BFS tree
  bool overflow = false;
};

Automaton explore(const RewriteSystem& r, ObjId x, const Limits& limits) {
  const Presentation& p = r.presentation();
  const std::size_t keep = r.max_lhs_length() > 0 ? r.max_lhs_length() - 1 : 0;
  std::vector<std::vector<GenId>> outgoing(p.nodes.size());
  for (GenId g = 0; g < p.generators.size(); ++g) {
    outgoing[p.generators[g].source].push_back(g);
  }

  Automaton a;
  std::unordered_map<std::u16string, std::size_t> ids;
  auto key = [](ObjId node, const std::u16string& suffix) {
    std::u16string k(1, static_cast<char16_t>(node));
    k += suffix;
    return k;
  };
  auto add = [&](ObjId node, std::u16string suffix, std::size_t from,
                 GenId via) {
    auto [it, fresh] = ids.emplace(key(node, suffix), a.node.size());
    if (fresh) {
      a.node.push_back(node);
      a.suffix.push_back(std::move(suffix));
      a.edges.emplace_back();
      a.parent.emplace_back(from, via);
    }
    return it->second;
  };
  add(x, {}, kNone, kNone);
  for (std::size_t s = 0; s < a.node.size(); ++s) {
    if (a.node.size() > limits.max_states) {
      a.overflow = true;
      break;
    }
    for (GenId g : outgoing[a.node[s]]) {
      std::u16string word = a.suffix[s];
      word.push_back(static_cast<char16_t>(g));
      if (r.suffix_match(word) != 0) continue;
      if (word.size() > keep) word.erase(0, word.size() - keep);
      const std::size_t t = add(p.generators[g].target, std::move(word), s, g);
      a.edges[s].emplace_back(g, t);
    }
  }
  return a;
}

std::u16string word_to(const Automaton& a, std::size_t state) {
  std::u16string w;
  while (a.parent[state].first != kNone) {
    w.push_back(static_cast<char16_t>(a.parent[state].second));
    state = a.parent[state].first;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

Verdict<std::vector<Path>> hom_from(const RewriteSystem& r, const Automaton& a,
                                    ObjId x, ObjId y, const Limits& limits) {
  const Presentation& p = r.presentation();
  const std::string hom_name = "hom(" + p.nodes[x] + ", " + p.nodes[y] + ")";
  if (a.overflow) {
    return Verdict<std::vector<Path>>::undecided(
        "max-states " + std::to_string(limits.max_states) +
        ": normal-form automaton from " + p.nodes[x] + " too large");
  }
  const std::size_t n = a.node.size();

  // States from which some state over y is reachable.
  std::vector<std::vector<std::size_t>> reverse(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (auto [g, t] : a.edges[s]) reverse[t].push_back(s);
  }
  std::vector<bool> useful(n, false);
  std::vector<std::size_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (a.node[s] == y) {
      useful[s] = true;
      queue.push_back(s);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t s : reverse[queue[i]]) {
      if (!useful[s]) {
        useful[s] = true;
        queue.push_back(s);
      }
    }
  }

  // Kahn on the useful subgraph; leftovers lie on or after a cycle.
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (!useful[s]) continue;
    for (auto [g, t] : a.edges[s]) {
      if (useful[t]) ++indegree[t];
    }
  }
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < n; ++s) {
    if (useful[s] && indegree[s] == 0) order.push_back(s);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (auto [g, t] : a.edges[order[i]]) {
      if (useful[t] && --indegree[t] == 0) order.push_back(t);
    }
  }
  const std::size_t useful_count =
      static_cast<std::size_t>(std::count(useful.begin(), useful.end(), true));

  if (order.size() < useful_count) {
    // Walk backwards through leftover states until one repeats.
    std::size_t s = 0;
    while (!(useful[s] && indegree[s] > 0)) ++s;
    std::vector<std::size_t> seen_at(n, kNone);
    std::vector<std::pair<std::size_t, GenId>> back;  // (predecessor, letter)
    while (seen_at[s] == kNone) {
      seen_at[s] = back.size();
      for (std::size_t prev : reverse[s]) {
        if (!useful[prev] || indegree[prev] == 0) continue;
        GenId letter = kNone;
        for (auto [g, t] : a.edges[prev]) {
          if (t == s) letter = g;
        }
        back.emplace_back(prev, letter);
        s = prev;
        break;
      }
    }
    // back[seen_at[s]..] walks the cycle backwards starting at s.
    std::u16string cycle;
    for (std::size_t i = back.size(); i-- > seen_at[s];) {
      cycle.push_back(static_cast<char16_t>(back[i].second));
    }
    const std::u16string prefix = word_to(a, s);
    // Forward BFS from s to a state over y.
    std::vector<std::pair<std::size_t, GenId>> via(n, {kNone, kNone});
    std::vector<std::size_t> bfs{s};
    std::vector<bool> visited(n, false);
    visited[s] = true;
    std::size_t hit = a.node[s] == y ? s : kNone;
    for (std::size_t i = 0; i < bfs.size() && hit == kNone; ++i) {
      for (auto [g, t] : a.edges[bfs[i]]) {
        if (visited[t] || !useful[t]) continue;
        visited[t] = true;
        via[t] = {bfs[i], g};
        bfs.push_back(t);
        if (a.node[t] == y) {
          hit = t;
          break;
        }
      }
    }
    std::u16string tail;
    for (std::size_t t = hit; t != s; t = via[t].first) {
      tail.push_back(static_cast<char16_t>(via[t].second));
    }
    std::reverse(tail.begin(), tail.end());
    const ObjId cycle_at = a.node[s];
    return Verdict<std::vector<Path>>::no(
        hom_name + " is infinite: u o c^n o v is a normal form for every n "
        "with u = " + p.format(to_path(x, prefix)) +
        ", c = " + p.format(to_path(cycle_at, cycle)) +
        ", v = " + p.format(to_path(cycle_at, tail)));
  }

  // Finite: enumerate every walk from the start that ends over y.
  std::vector<Path> found;
  std::u16string word;
  bool too_long = false;
  bool too_many = false;
  auto dfs = [&](auto&& self, std::size_t s) -> void {
    if (too_long || too_many) return;
    if (word.size() > limits.max_word_len) {
      too_long = true;
      return;
    }
    if (a.node[s] == y) {
      found.push_back(to_path(x, word));
      if (found.size() > limits.max_states) too_many = true;
    }
    for (auto [g, t] : a.edges[s]) {
      if (!useful[t]) continue;
      word.push_back(static_cast<char16_t>(g));
      self(self, t);
      word.pop_back();
    }
  };
  if (useful[0]) dfs(dfs, 0);
  if (too_long) {
    return Verdict<std::vector<Path>>::undecided(
        "max-word-len " + std::to_string(limits.max_word_len) + ": " +
        hom_name + " has longer normal forms");
  }
  if (too_many) {
    return Verdict<std::vector<Path>>::undecided(
        "max-states " + std::to_string(limits.max_states) + ": " + hom_name +
        " has too many normal forms");
  }
  std::sort(found.begin(), found.end(),
            [](const Path& l, const Path& r) { return shortlex_less(l, r); });
  return Verdict<std::vector<Path>>::yes(std::move(found));
}

}  // namespace

Verdict<std::vector<Path>> hom_set(const RewriteSystem& r, ObjId x, ObjId y,
                                   const Limits& limits) {
  if (!r.complete()) {
    return Verdict<std::vector<Path>>::undecided(r.bound());
  }
  return hom_from(r, explore(r, x, limits), x, y, limits);
}

Verdict<std::vector<Path>> hom_set(std::shared_ptr<const Presentation> p,
                                   ObjId x, ObjId y, const Limits& limits) {
  return hom_set(complete_rewriting(std::move(p), limits), x, y, limits);
}

std::vector<Verdict<std::vector<Path>>> hom_sets_from(const RewriteSystem& r,
                                                      ObjId x,
                                                      const Limits& limits) {
  std::vector<Verdict<std::vector<Path>>> out;
  const std::size_t k = r.presentation().nodes.size();
  if (!r.complete()) {
    for (std::size_t y = 0; y < k; ++y) {
      out.push_back(Verdict<std::vector<Path>>::undecided(r.bound()));
    }
    return out;
  }
  const Automaton a = explore(r, x, limits);
  for (ObjId y = 0; y < k; ++y) out.push_back(hom_from(r, a, x, y, limits));
  return out;
}

Verdict<Finitization> try_finitize(const RewriteSystem& r,
                                   const Limits& limits) {
  if (!r.complete()) return Verdict<Finitization>::undecided(r.bound());
  const Presentation& p = r.presentation();
  const std::size_t k = p.nodes.size();

  std::vector<std::vector<std::vector<Path>>> homs(k);
  std::optional<Verdict<Finitization>> undecided;
  for (ObjId x = 0; x < k; ++x) {
    const Automaton a = explore(r, x, limits);
    for (ObjId y = 0; y < k; ++y) {
      auto h = hom_from(r, a, x, y, limits);
      if (h.is_no()) return Verdict<Finitization>::no(h.witness());
      if (h.is_undecided()) {
        if (!undecided) undecided = Verdict<Finitization>::undecided(h.bound());
        homs[x].emplace_back();
        continue;
      }
      homs[x].push_back(std::move(h.value()));
    }
  }
  // A later proven-infinite hom-set takes precedence over an earlier bound.
  if (undecided) return *undecided;

  Finitization out;
  FinCategory::Builder b;
  for (const auto& node : p.nodes) b.add_object(node);
  std::map<std::pair<ObjId, std::u16string>, MorId> lookup;
  std::set<std::string> names;
  for (ObjId x = 0; x < k; ++x) {
    for (ObjId y = 0; y < k; ++y) {
      for (const Path& nf : homs[x][y]) {
        std::string name = p.format(nf);
        for (int suffix = 2; !names.insert(name).second; ++suffix) {
          name = p.format(nf) + "#" + std::to_string(suffix);
        }
        const MorId m = b.add_morphism(std::move(name), x, y);
        lookup.emplace(std::pair{x, to_word(nf)}, m);
        out.normal_forms.push_back(nf);
      }
    }
  }
  for (ObjId x = 0; x < k; ++x) b.set_identity(x, lookup.at({x, {}}));
  const std::size_t n = out.normal_forms.size();
  for (MorId f = 0; f < n; ++f) {
    const Path& pf = out.normal_forms[f];
    const ObjId mid = p.target(pf);
    for (ObjId z = 0; z < k; ++z) {
      for (const Path& pg : homs[mid][z]) {
        const MorId g = lookup.at({mid, to_word(pg)});
        const std::u16string w = r.reduce_word(to_word(p.then(pf, pg)));
        b.set_composite(g, f, lookup.at({pf.source, w}));
      }
    }
  }
  out.category = share(std::move(b).build(Validation::Full));
  for (GenId g = 0; g < p.generators.size(); ++g) {
    out.generator_image.push_back(
        lookup.at({p.generators[g].source, r.reduce_word(to_word(p.single(g)))}));
  }
  return Verdict<Finitization>::yes(std::move(out));
}

Verdict<Finitization> try_finitize(std::shared_ptr<const Presentation> p,
                                   const Limits& limits) {
  return try_finitize(complete_rewriting(std::move(p), limits), limits);
}

}  // namespace catdesc
