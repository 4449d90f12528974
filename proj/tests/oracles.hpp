#pragma once

// Slow, independent reference computations used only by the tests.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "paradox/formula.hpp"
#include "paradox/hf_store.hpp"
#include "paradox/model.hpp"
#include "paradox/rules.hpp"

namespace oracle {

using paradox::MembershipGraph;
using paradox::Subset;

/// children[p] = nodes m with m ∈ p.
inline std::vector<std::vector<std::size_t>> children(const MembershipGraph& g) {
  std::vector<std::vector<std::size_t>> c(g.node_count);
  for (auto [m, p] : g.edges) c[p].push_back(m);
  return c;
}

/// Greatest bisimulation on the disjoint union of two graphs, by naive refinement
/// of the full relation. Returns whether the two roots are related.
inline bool bisimilar(const MembershipGraph& g1, const MembershipGraph& g2) {
  const std::size_t n1 = g1.node_count, n = n1 + g2.node_count;
  auto c1 = children(g1), c2 = children(g2);
  std::vector<std::vector<std::size_t>> c(n);
  for (std::size_t i = 0; i < n1; ++i) c[i] = c1[i];
  for (std::size_t i = 0; i < g2.node_count; ++i)
    for (auto m : c2[i]) c[n1 + i].push_back(n1 + m);
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, true));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (!r[a][b]) continue;
        auto covered = [&](std::size_t x, std::size_t y, bool flip) {
          for (auto xm : c[x]) {
            bool found = false;
            for (auto ym : c[y]) found = found || (flip ? r[ym][xm] : r[xm][ym]);
            if (!found) return false;
          }
          return true;
        };
        if (!covered(a, b, false) || !covered(b, a, true)) {
          r[a][b] = false;
          changed = true;
        }
      }
  }
  return r[g1.root][n1 + g2.root];
}

/// Number of bisimulation classes among the nodes reachable from the root.
inline std::size_t quotient_size(const MembershipGraph& g) {
  auto c = children(g);
  std::set<std::size_t> reach{g.root};
  std::vector<std::size_t> todo{g.root};
  while (!todo.empty()) {
    auto x = todo.back();
    todo.pop_back();
    for (auto m : c[x])
      if (reach.insert(m).second) todo.push_back(m);
  }
  std::vector<std::size_t> nodes(reach.begin(), reach.end());
  std::vector<std::size_t> rep;
  for (auto x : nodes) {
    bool fresh = true;
    for (auto y : rep) {
      MembershipGraph a = g, b = g;
      a.root = x;
      b.root = y;
      if (bisimilar(a, b)) fresh = false;
    }
    if (fresh) rep.push_back(x);
  }
  return rep.size();
}

/// Lengths k ≤ bound of membership paths root ∋ … ∋ root, by boolean matrix powers.
inline std::vector<std::size_t> cycle_lengths(const MembershipGraph& g, std::size_t bound) {
  const std::size_t n = g.node_count;
  std::vector<std::vector<bool>> step(n, std::vector<bool>(n, false));  // step[p][m]: m ∈ p
  for (auto [m, p] : g.edges) step[p][m] = true;
  std::vector<std::vector<bool>> power = step;
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (power[g.root][g.root]) out.push_back(k);
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (power[i][j])
          for (std::size_t l = 0; l < n; ++l)
            if (step[j][l]) next[i][l] = true;
    power = next;
  }
  return out;
}

/// Ackermann code Σ 2^code(m), for grounded sets whose codes fit in 64 bits.
inline std::uint64_t ackermann(const paradox::SetStore& s, paradox::SetHandle x) {
  std::uint64_t c = 0;
  for (auto m : s.members(x)) c |= std::uint64_t{1} << ackermann(s, m);
  return c;
}

/// Satisfaction by direct recursion with a name-keyed environment.
inline bool eval(const paradox::Structure& m, const paradox::Formula& f, std::map<std::string, std::size_t> sets,
                 const std::map<std::string, Subset>& classes = {}) {
  using K = paradox::FormulaKind;
  auto value_in = [&](const paradox::Term& l, const paradox::Term& r) {
    const std::size_t x = sets.at(l.name);
    return r.is_class ? classes.at(r.name).contains(x) : m.member(x, sets.at(r.name));
  };
  auto ext = [&](const paradox::Term& t) { return t.is_class ? classes.at(t.name) : m.extension_of(sets.at(t.name)); };
  switch (f.kind()) {
    case K::member: return value_in(f.lhs(), f.rhs());
    case K::equal:
      if (!f.lhs().is_class && !f.rhs().is_class) return sets.at(f.lhs().name) == sets.at(f.rhs().name);
      return ext(f.lhs()) == ext(f.rhs());
    case K::not_: return !eval(m, f.a(), sets, classes);
    case K::and_: return eval(m, f.a(), sets, classes) && eval(m, f.b(), sets, classes);
    case K::or_: return eval(m, f.a(), sets, classes) || eval(m, f.b(), sets, classes);
    case K::implies: return !eval(m, f.a(), sets, classes) || eval(m, f.b(), sets, classes);
    case K::iff: return eval(m, f.a(), sets, classes) == eval(m, f.b(), sets, classes);
    case K::forall:
    case K::exists: {
      const bool all = f.kind() == K::forall;
      for (std::size_t e = 0; e < m.size(); ++e) {
        sets[f.var()] = e;
        const bool v = eval(m, f.a(), sets, classes);
        if (all && !v) return false;
        if (!all && v) return true;
      }
      return all;
    }
  }
  return false;
}

/// Least fixed point as the intersection of all closed sets (φ(S) ⊆ S).
inline Subset lfp(const paradox::RuleSystem& sys) {
  Subset out = sys.space();
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << sys.size()); ++b) {
    const Subset s(b);
    bool closed = true;
    for (const auto& r : sys.rules())
      if (r.premise.subset_of(s) && !s.contains(r.conclusion)) closed = false;
    if (closed) out = out & s;
  }
  return out;
}

/// Greatest fixed point as the union of all post-fixed sets (S ⊆ φ(S)).
inline Subset gfp(const paradox::RuleSystem& sys) {
  Subset out;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << sys.size()); ++b) {
    const Subset s(b);
    Subset phi;
    for (const auto& r : sys.rules())
      if (r.premise.subset_of(s)) phi.insert(r.conclusion);
    if (s.subset_of(phi)) out = out | s;
  }
  return out;
}

}  // namespace oracle
