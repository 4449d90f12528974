#pragma once

// Classic paradoxical classes, each with two certificates: the verdict of
// decide() in the relevant finite structure, and the class's own uniform
// productive choice re-checked pointwise.
//
//   russell        {x | x ∉ x}                       witness for s: s
//   rn(n)          {x | not x ∈ⁿ x}                  witness for s: s
//   sikic(F)       {x | x ∉ F(x)}, F onto sets       witness for s: d with F(d) = s
//   ni             not isomorphic to a member        witness for s: s
//   wf             grounded                          witness for s: s
//   nwf            ungrounded                        witness for s: {x1, x2}
//   inj(F)         {F(x) | F(x) ∉ x}, F injective    witness for s: F(s)

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "paradox/hf_store.hpp"
#include "paradox/model.hpp"
#include "paradox/productivity.hpp"
#include "paradox/report.hpp"
#include "paradox/subset.hpp"

namespace paradox {

// ---- structure-level classes -----------------------------------------------

inline ClassRef russell_class(const Structure& m) {
  return ClassRef{russell_extension(m), ClassOrigin{ClassOrigin::Kind::builder, "russell"}};
}

inline ClassRef rn_class(const Structure& m, std::size_t n) {
  if (n == 0) throw precondition_error("rn: n must be at least 1");
  return ClassRef{m.domain() - n_cyclic_elements(m, n),
                  ClassOrigin{ClassOrigin::Kind::builder, "rn:" + std::to_string(n)}};
}

/// First represented extension that no ext(F(d)) hits, if any.
inline std::optional<std::size_t> sikic_unhit(const Structure& m, const std::vector<std::size_t>& f) {
  for (std::size_t s = 0; s < m.size(); ++s) {
    bool hit = false;
    for (std::size_t d = 0; d < m.size() && !hit; ++d) hit = m.extension_of(f[d]) == m.extension_of(s);
    if (!hit) return s;
  }
  return std::nullopt;
}

/// S = {x | x ∉ ext(F(x))}. F must reach every represented extension.
inline ClassRef sikic_class(const Structure& m, const std::vector<std::size_t>& f) {
  if (f.size() != m.size()) throw precondition_error("sikic: F must be total on the domain");
  for (auto v : f)
    if (v >= m.size()) throw precondition_error("sikic: F value out of range");
  if (auto s = sikic_unhit(m, f))
    throw precondition_error("sikic: F is not surjective; set " + m.name(*s) + " with extension " +
                             to_string(m, m.extension_of(*s)) + " is not hit");
  Subset out;
  for (std::size_t x = 0; x < m.size(); ++x)
    if (!m.member(x, f[x])) out.insert(x);
  return ClassRef{out, ClassOrigin{ClassOrigin::Kind::builder, "sikic"}};
}

/// Uniform witness for represented s ⊆ C, or none if the uniform argument does not apply.
using UniformWitness = std::function<std::optional<std::size_t>(std::size_t s)>;

/// Checks one class: decide() is paradoxical with a valid certificate, and
/// every uniform witness lands in C ∖ ext(s).
inline bool certify_structure_class(Report& r, const Structure& m, Subset c, const UniformWitness& uniform,
                                    const std::string& what) {
  const Verdict v = decide(m, c);
  bool ok = !v.is_set() && validate_verdict(m, c, v);
  for (std::size_t s = 0; s < m.size() && ok; ++s) {
    if (!m.extension_of(s).subset_of(c)) continue;
    auto w = uniform(s);
    ok = w && c.contains(*w) && !m.member(*w, s);
  }
  if (!ok) r.counterexample(m.bitmap(), what + " class=" + std::to_string(c.bits()));
  return ok;
}

/// russell / rn:N / sikic over every structure of size ≤ max_n (every F for sikic).
inline Report catalog_structure_sweep(const std::string& which, std::size_t rn_n = 2, std::size_t max_n = 3) {
  if (max_n > 3) throw budget_error("catalog: structure sweep capped at n=3");
  Report r("catalog-" + which + (which == "rn" ? ":" + std::to_string(rn_n) : ""));
  std::uint64_t structures = 0, certified = 0, skipped_maps = 0;
  for (std::size_t n = 0; n <= max_n; ++n)
    for_each_structure(n, [&](const Structure& m) {
      const auto self = [](std::size_t s) { return std::optional<std::size_t>(s); };
      if (which == "russell") {
        ++structures;
        certified += certify_structure_class(r, m, russell_class(m).extension, self, "russell");
      } else if (which == "rn") {
        ++structures;
        certified += certify_structure_class(r, m, rn_class(m, rn_n).extension, self, "rn");
      } else if (which == "sikic") {
        std::vector<std::size_t> f(n, 0);
        std::uint64_t maps = 1;
        for (std::size_t i = 0; i < n; ++i) maps *= n;
        for (std::uint64_t code = 0; code < maps; ++code) {
          for (std::size_t i = 0, c = code; i < n; ++i, c /= n) f[i] = c % n;
          if (sikic_unhit(m, f)) {
            ++skipped_maps;
            continue;
          }
          ++structures;
          const Subset s = sikic_class(m, f).extension;
          const auto uniform = [&](std::size_t e) -> std::optional<std::size_t> {
            for (std::size_t d = 0; d < n; ++d)
              if (m.extension_of(f[d]) == m.extension_of(e)) return d;
            return std::nullopt;
          };
          certified += certify_structure_class(r, m, s, uniform, "sikic");
        }
      } else {
        throw precondition_error("catalog: unknown structure class '" + which + "'");
      }
    });
  r.count("instances", structures);
  r.count("certified", certified);
  if (which == "sikic") r.count("non-surjective-maps-skipped", skipped_maps);
  r.check("catalog-" + which, certified == structures && structures > 0);
  return r;
}

// ---- store-level classes ----------------------------------------------------

/// Finite ∈-structure on `universe` with the store's membership.
inline Structure structure_from_store(const SetStore& store, const std::vector<SetHandle>& universe) {
  Structure m(universe.size());
  std::vector<std::string> labels;
  for (std::size_t y = 0; y < universe.size(); ++y) {
    for (std::size_t x = 0; x < universe.size(); ++x)
      if (store.contains(universe[y], universe[x])) m.set_member(x, y);
    labels.push_back("u" + std::to_string(y));
  }
  m.set_labels(std::move(labels));
  return m;
}

/// Ω, the two-cycle a = {∅, b}, b = {a}, and {∅, Ω}; closed under Tr.
inline std::vector<SetHandle> hyperset_extras(SetStore& store) {
  const SetHandle omega = store.canonicalize(MembershipGraph{1, {{0, 0}}, 0});
  // nodes: 0 = ∅, 1 = a, 2 = b
  const SetHandle a = store.canonicalize(MembershipGraph{3, {{0, 1}, {2, 1}, {1, 2}}, 1});
  const SetHandle b = store.canonicalize(MembershipGraph{3, {{0, 1}, {2, 1}, {1, 2}}, 2});
  const SetHandle c = store.pair(store.empty(), omega);
  return {omega, a, b, c};
}

/// V_d followed by the hyperset extras, duplicates dropped.
inline std::vector<SetHandle> store_universe(SetStore& store, std::size_t d, bool with_hypersets) {
  auto u = rank_universe(store, d);
  if (with_hypersets) {
    std::vector<SetHandle> closure;
    for (auto h : hyperset_extras(store))
      for (auto t : store.transitive_closure(h)) closure.push_back(t);
    for (auto t : closure)
      if (std::find(u.begin(), u.end(), t) == u.end()) u.push_back(t);
  }
  return u;
}

/// NI ∩ U: elements not isomorphic to any of their members.
inline Subset ni_extension(const SetStore& store, const std::vector<SetHandle>& u) {
  Subset out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    bool iso = false;
    for (auto m : store.members(u[i]))
      if (store.is_isomorphic(u[i], m)) {
        iso = true;
        break;
      }
    if (!iso) out.insert(i);
  }
  return out;
}

inline Subset wf_extension(const SetStore& store, const std::vector<SetHandle>& u) {
  Subset out;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (store.grounded(u[i])) out.insert(i);
  return out;
}

/// ni or wf over V_d plus hyperset extras; identity is the uniform choice.
inline Report catalog_store_identity(const std::string& which, std::size_t d = 3) {
  if (d > 4) throw budget_error("catalog: store universe capped at d=4");
  Report r("catalog-" + which);
  SetStore store;
  const auto u = store_universe(store, d, true);
  require_small_domain(u.size(), "catalog universe");
  const Structure m = structure_from_store(store, u);
  Subset c;
  if (which == "ni")
    c = ni_extension(store, u);
  else if (which == "wf")
    c = wf_extension(store, u);
  else
    throw precondition_error("catalog: unknown store class '" + which + "'");
  for (std::size_t i = 0; i < u.size(); ++i)
    r.line("MEMBER " + m.name(i) + " " + store.to_string(u[i]) + (c.contains(i) ? " in" : " out"));
  const auto self = [](std::size_t s) { return std::optional<std::size_t>(s); };
  const bool ok = certify_structure_class(r, m, c, self, which);
  const Verdict v = decide(m, c);
  report_verdict(r, m, c, v);
  r.count("universe", u.size());
  r.count("class-size", c.size());
  r.check("catalog-" + which, ok);
  return r;
}

// ---- injective images ------------------------------------------------------

enum class SetFunctionKind { singleton, powerset, successor, pair_with, ordered_pair_with, constant };

struct SetFunction {
  SetFunctionKind kind = SetFunctionKind::singleton;
  std::optional<SetHandle> param;  // pair_with, ordered_pair_with, constant

  SetHandle operator()(SetStore& store, SetHandle x) const {
    switch (kind) {
      case SetFunctionKind::singleton: return store.singleton(x);
      case SetFunctionKind::powerset: return store.powerset(x);
      case SetFunctionKind::successor: return store.successor(x);
      case SetFunctionKind::pair_with: return store.pair(x, *param);
      case SetFunctionKind::ordered_pair_with: return store.ordered_pair(x, *param);
      case SetFunctionKind::constant: return *param;
    }
    return x;
  }

  /// rank(F(x)) from rank(x), when it is determined without building F(x).
  std::optional<std::size_t> rank_of_image(const SetStore& store, SetHandle x) const {
    auto rx = store.rank(x);
    if (!rx) return std::nullopt;
    auto rp = param ? store.rank(*param) : std::optional<std::size_t>(0);
    switch (kind) {
      case SetFunctionKind::singleton:
      case SetFunctionKind::powerset:
      case SetFunctionKind::successor: return *rx + 1;
      case SetFunctionKind::pair_with:
        if (!rp) return std::nullopt;
        return std::max(*rx, *rp) + 1;
      case SetFunctionKind::ordered_pair_with:
        if (!rp) return std::nullopt;
        return std::max(*rx, *rp) + 2;
      case SetFunctionKind::constant: return rp;
    }
    return std::nullopt;
  }

  std::string name(const SetStore& store) const {
    switch (kind) {
      case SetFunctionKind::singleton: return "singleton";
      case SetFunctionKind::powerset: return "powerset";
      case SetFunctionKind::successor: return "successor";
      case SetFunctionKind::pair_with: return "pair:" + store.to_string(*param);
      case SetFunctionKind::ordered_pair_with: return "opair:" + store.to_string(*param);
      case SetFunctionKind::constant: return "const:" + store.to_string(*param);
    }
    return "?";
  }
};

/// singleton | powerset | successor | pair | opair | const; the parameter of
/// pair/opair/const is the von Neumann natural given after a colon (default 0).
inline SetFunction parse_set_function(SetStore& store, const std::string& text) {
  std::string head = text, arg;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    head = text.substr(0, colon);
    arg = text.substr(colon + 1);
  }
  std::size_t n = 0;
  if (!arg.empty()) {
    if (arg.find_first_not_of("0123456789") != std::string::npos || arg.size() > 2)
      throw input_error("function parameter must be a small natural, got '" + arg + "'");
    n = std::stoul(arg);
  }
  SetFunction f;
  if (head == "singleton")
    f.kind = SetFunctionKind::singleton;
  else if (head == "powerset")
    f.kind = SetFunctionKind::powerset;
  else if (head == "successor")
    f.kind = SetFunctionKind::successor;
  else if (head == "pair")
    f.kind = SetFunctionKind::pair_with;
  else if (head == "opair")
    f.kind = SetFunctionKind::ordered_pair_with;
  else if (head == "const")
    f.kind = SetFunctionKind::constant;
  else
    throw input_error("unknown function '" + head + "'");
  if (f.kind == SetFunctionKind::pair_with || f.kind == SetFunctionKind::ordered_pair_with ||
      f.kind == SetFunctionKind::constant)
    f.param = von_neumann(store, n);
  else if (!arg.empty())
    throw input_error("function '" + head + "' takes no parameter");
  return f;
}

/// y ∈ {F(x) | F(x) ∉ x}; the preimage is searched in Tr(y) (plus the
/// constant's own preimage candidates when F is constant).
inline bool in_injective_image(SetStore& store, const SetFunction& f, SetHandle y) {
  if (f.kind == SetFunctionKind::constant) return y == *f.param && !store.contains(y, y);
  const auto candidates = store.transitive_closure(y);
  for (auto t : candidates) {
    auto rk = f.rank_of_image(store, t);
    auto ry = store.rank(y);
    if (rk && ry && *rk != *ry) continue;
    if (f(store, t) == y && !store.contains(t, y)) return true;
  }
  return false;
}

/// inj:OP over V_d: F injective on V_d, and for every s ∈ V_d with s ⊆ I,
/// F(s) ∈ I ∖ s. I ∩ V_d is a truncation, so no verdict is taken on it.
inline Report catalog_injective(SetStore& store, const SetFunction& f, std::size_t d = 3) {
  if (d > 4) throw budget_error("catalog: injective-image universe capped at d=4");
  Report r("catalog-inj:" + f.name(store));
  const auto u = rank_universe(store, d);
  std::unordered_map<std::uint32_t, std::uint32_t> seen;  // image id -> argument id
  bool injective = true;
  for (auto x : u) {
    auto y = f(store, x);
    auto [it, fresh] = seen.emplace(y.id, x.id);
    if (!fresh && it->second != x.id) {
      injective = false;
      r.counterexample(0, "F(" + store.to_string(x) + ") = F(" + store.to_string(SetHandle{it->second}) + ")");
    }
  }
  r.check("injective-on-universe", injective);
  Subset c;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (in_injective_image(store, f, u[i])) c.insert(i);
  const Structure m = structure_from_store(store, u);
  std::uint64_t swept = 0, good = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!m.extension_of(i).subset_of(c)) continue;
    ++swept;
    const SetHandle s = u[i];
    const SetHandle fs = f(store, s);
    const bool ok = !store.contains(s, fs) && in_injective_image(store, f, fs);
    if (ok)
      ++good;
    else
      r.counterexample(0, "s=" + store.to_string(s) + " F(s)=" + store.to_string(fs));
  }
  r.count("universe", u.size());
  r.count("class-size", c.size());
  r.count("swept", swept);
  r.check("uniform-choice", swept == good);
  return r;
}

// ---- Šikić with ∪ and ∩ ----------------------------------------------------

/// S = {x ∈ V_d | x ∉ G(x)} for G = ∪ or ∩ (∩∅ taken as ∅). Every s ∈ V_{d-1}
/// is G({s}), so d = {s} is the uniform witness for s ⊆ S.
inline Report catalog_sikic_store(const std::string& op, std::size_t d = 3) {
  if (d > 4 || d == 0) throw budget_error("sikic store demo: d must be in 1..4");
  if (op != "union" && op != "intersection") throw input_error("sikic: operation must be union or intersection");
  Report r("catalog-sikic:" + op);
  SetStore store;
  const auto u = rank_universe(store, d);
  auto g = [&](SetHandle x) {
    if (op == "union") return store.big_union(x);
    auto ms = store.members(x);
    if (ms.empty()) return store.empty();
    std::vector<SetHandle> out;
    for (auto y : store.members(ms.front())) {
      bool all = true;
      for (auto z : ms) all = all && store.contains(z, y);
      if (all) out.push_back(y);
    }
    return store.make_set(out);
  };
  std::vector<SetHandle> s_class;
  for (auto x : u)
    if (!store.contains(g(x), x)) s_class.push_back(x);
  auto in_s = [&](SetHandle x) { return std::find(s_class.begin(), s_class.end(), x) != s_class.end(); };
  std::uint64_t swept = 0, good = 0;
  for (auto s : u) {
    if (*store.rank(s) + 1 >= d) continue;  // {s} must stay in V_d
    bool inside = true;
    for (auto m : store.members(s)) inside = inside && in_s(m);
    if (!inside) continue;
    ++swept;
    const SetHandle w = store.singleton(s);
    if (g(w) == s && in_s(w) && !store.contains(s, w))
      ++good;
    else
      r.counterexample(0, "s=" + store.to_string(s));
  }
  r.count("universe", u.size());
  r.count("class-size", s_class.size());
  r.count("swept", swept);
  r.check("catalog-sikic:" + op, swept == good);
  return r;
}

// ---- NWF in generated hyperset stores ---------------------------------------

/// A store holding V_2 and the canonical forms of `graphs` random membership
/// graphs on 2..5 nodes, with at least one ungrounded node.
inline std::vector<SetHandle> random_hyperset_universe(SetStore& store, std::mt19937_64& rng, std::size_t graphs = 3) {
  std::vector<SetHandle> u = rank_universe(store, 2);
  u.push_back(store.canonicalize(MembershipGraph{1, {{0, 0}}, 0}));
  std::uniform_int_distribution<std::size_t> size_dist(2, 5);
  std::bernoulli_distribution edge(0.35);
  for (std::size_t k = 0; k < graphs; ++k) {
    MembershipGraph g;
    g.node_count = size_dist(rng);
    for (std::size_t p = 0; p < g.node_count; ++p)
      for (std::size_t m = 0; m < g.node_count; ++m)
        if (edge(rng)) g.edges.emplace_back(m, p);
    for (std::size_t root = 0; root < g.node_count; ++root) {
      g.root = root;
      u.push_back(store.canonicalize(g));
    }
  }
  std::vector<SetHandle> closed;
  for (auto h : u)
    for (auto t : store.transitive_closure(h))
      if (std::find(closed.begin(), closed.end(), t) == closed.end()) closed.push_back(t);
  store.sort_canonical(closed);
  return closed;
}

/// NWF uniform choice in one store: for every s in the universe with only
/// ungrounded members, {x1, x2} ∈ NWF ∖ s, where x1 is the least member of s and
/// x2 the least grounded set (Ackermann order) outside ∪s. For s = ∅ the witness is Ω.
inline bool nwf_demo(SetStore& store, const std::vector<SetHandle>& u, Report& r) {
  bool ok = true;
  const SetHandle omega = store.canonicalize(MembershipGraph{1, {{0, 0}}, 0});
  for (auto s : u) {
    bool inside = true;
    for (auto m : store.members(s)) inside = inside && !store.grounded(m);
    if (!inside) continue;
    SetHandle w = omega;
    if (!store.members(s).empty()) {
      const SetHandle x1 = store.members(s).front();
      const SetHandle un = store.big_union(s);
      // ∪s is finite, so some natural lies outside it; ∪s ≠ universe is checked here.
      std::optional<SetHandle> x2;
      for (std::size_t code = 0; code < 64 && !x2; ++code) {
        // Grounded sets in Ackermann order: code bits select smaller codes.
        std::vector<SetHandle> by_code;
        std::function<SetHandle(std::uint64_t)> decode = [&](std::uint64_t c) {
          std::vector<SetHandle> ms;
          for (std::size_t b = 0; b < 64; ++b)
            if ((c >> b) & 1u) ms.push_back(decode(b));
          return store.make_set(ms);
        };
        SetHandle cand = decode(code);
        if (!store.contains(un, cand)) x2 = cand;
      }
      if (!x2) {
        r.counterexample(0, "no grounded set outside union of " + store.to_string(s));
        ok = false;
        continue;
      }
      w = store.pair(x1, *x2);
      if (store.contains(un, *x2)) ok = false;
    }
    if (store.contains(s, w) || store.grounded(w)) {
      r.counterexample(0, "s=" + store.to_string(s) + " w=" + store.to_string(w));
      ok = false;
    }
  }
  return ok;
}

inline Report catalog_nwf(std::size_t stores, std::uint64_t seed) {
  Report r("catalog-nwf");
  std::mt19937_64 rng(seed);
  std::uint64_t passed = 0, sets_checked = 0;
  for (std::size_t k = 0; k < stores; ++k) {
    SetStore store;
    auto u = random_hyperset_universe(store, rng);
    for (auto s : u) {
      bool inside = true;
      for (auto m : store.members(s)) inside = inside && !store.grounded(m);
      sets_checked += inside;
    }
    passed += nwf_demo(store, u, r);
  }
  r.count("stores", stores);
  r.count("subsets-checked", sets_checked);
  r.count("stores-passed", passed);
  r.check("catalog-nwf", passed == stores);
  return r;
}

}  // namespace paradox
