#pragma once

// Truncated cumulative-cardinal stages
//   C_0 = ∅,  C_1 = adjoin closure,  C_{α+1} = least Cl with S ⊆ Cl ∧ S ≼ C_α ⇒ S ∈ Cl,
// the finite domination relation, Cantor's diagonal, and closure properties of V_d.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "paradox/error.hpp"
#include "paradox/hf_store.hpp"
#include "paradox/report.hpp"
#include "paradox/rules.hpp"
#include "paradox/subset.hpp"

namespace paradox {

/// X ≼ Y  ⇔  ∃F F[Y] = X. For finite sets: X empty, or Y nonempty and |X| ≤ |Y|.
constexpr bool dominates(std::size_t x_size, std::size_t y_size) {
  return x_size == 0 || (y_size != 0 && x_size <= y_size);
}

struct StageConfig {
  std::size_t stages = 2;  // successor stages built after C_0; C_1 counts as the first
  std::size_t seed_rank = 2;
  std::size_t card_budget = 4;
  std::size_t rank_budget = 3;
  bool limit = false;  // append the stage closed under S ≼ C_β for some earlier β
};

struct Stage {
  std::string index;               // "0", "1", ... or "limit"
  std::vector<SetHandle> members;  // canonical order
  bool truncated = false;
};

inline constexpr std::size_t max_stage_rank = 4;
inline constexpr std::size_t max_stage_count = 8;

namespace detail {

/// Least Cl with: S ⊆ Cl, rank S ≤ rank_budget, |S| ≤ card_budget and S ≼ some
/// earlier stage ⇒ S ∈ Cl. Returns the members and whether a budget cut anything.
inline std::pair<std::vector<SetHandle>, bool> stage_closure(SetStore& store, const std::vector<std::size_t>& earlier,
                                                             const StageConfig& cfg) {
  std::size_t bound = 0;  // largest |S| any earlier stage dominates
  for (auto n : earlier) bound = std::max(bound, n);
  const std::size_t card = std::min(bound, cfg.card_budget);
  bool truncated = false;
  std::vector<SetHandle> cl;
  for (;;) {
    std::vector<SetHandle> pool;
    for (auto x : cl) {
      if (*store.rank(x) + 1 <= cfg.rank_budget)
        pool.push_back(x);
      else
        truncated = true;
    }
    if (pool.size() > cfg.card_budget && bound > cfg.card_budget) truncated = true;
    if (pool.size() > 24) throw budget_error("stage closure: pool of " + std::to_string(pool.size()) + " sets");
    std::vector<SetHandle> added;
    // Subsets of the pool of size ≤ card, by increasing bitmask.
    std::vector<SetHandle> a;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << pool.size()); ++b) {
      if (static_cast<std::size_t>(std::popcount(b)) > card) continue;
      a.clear();
      for (std::size_t i = 0; i < pool.size(); ++i)
        if ((b >> i) & 1u) a.push_back(pool[i]);
      const SetHandle s = store.make_set(a);
      if (!std::binary_search(cl.begin(), cl.end(), s, store.canonical_less())) added.push_back(s);
    }
    if (added.empty()) break;
    cl.insert(cl.end(), added.begin(), added.end());
    store.sort_canonical(cl);
    cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
  }
  return {cl, truncated};
}

}  // namespace detail

inline std::vector<Stage> build_stages(SetStore& store, const StageConfig& cfg) {
  if (cfg.stages < 1) throw precondition_error("hierarchy: stage count must be at least 1");
  if (cfg.stages > max_stage_count) throw budget_error("hierarchy: at most 8 stages");
  if (cfg.rank_budget > max_stage_rank || cfg.seed_rank > max_stage_rank)
    throw budget_error("hierarchy: rank budgets are capped at 4");
  std::vector<Stage> out;
  out.push_back(Stage{"0", {}, false});
  StoreSystem adjoin;
  adjoin.rank_bound = cfg.seed_rank;
  adjoin.schemas = {Schema::adjoin};
  const StoreFixedPoint c1 = least_fixed_point(store, adjoin);
  // The adjoin closure is infinite, so the seed rank always cuts it.
  out.push_back(Stage{"1", c1.result, true});
  std::vector<std::size_t> sizes{0, c1.result.size()};
  for (std::size_t k = 2; k <= cfg.stages; ++k) {
    auto [members, truncated] = detail::stage_closure(store, {sizes.back()}, cfg);
    out.push_back(Stage{std::to_string(k), std::move(members), truncated});
    sizes.push_back(out.back().members.size());
  }
  if (cfg.limit) {
    auto [members, truncated] = detail::stage_closure(store, sizes, cfg);
    out.push_back(Stage{"limit", std::move(members), truncated});
  }
  return out;
}

/// Sets of rank ≤ rank_budget all of whose hereditary members (and itself) have ≤ k elements.
inline std::vector<SetHandle> hereditarily_small(SetStore& store, std::size_t k, std::size_t rank_budget) {
  if (rank_budget > max_stage_rank) throw budget_error("hereditarily_small: rank budget capped at 4");
  const auto universe = rank_universe(store, rank_budget + 1);
  std::unordered_map<std::uint32_t, bool> ok;  // canonical order lists members before sets
  std::vector<SetHandle> out;
  for (auto x : universe) {
    bool good = store.members(x).size() <= k;
    for (auto m : store.members(x)) good = good && ok.at(m.id);
    ok.emplace(x.id, good);
    if (good) out.push_back(x);
  }
  return out;
}

inline bool stage_contains(const SetStore& store, const Stage& s, SetHandle x) {
  return std::binary_search(s.members.begin(), s.members.end(), x, store.canonical_less());
}

inline void print_stage(Report& r, const SetStore& store, const Stage& s) {
  r.line("STAGE " + s.index + " size=" + std::to_string(s.members.size()) + (s.truncated ? " truncated" : ""));
  for (auto x : s.members) r.line("MEMBER " + s.index + " " + store.to_string(x));
}

/// Stage laws on built stages:
///   transitivity     S ∈ C_α ⇒ S ⊆ C_α
///   growth           C_α ⊂ C_{α+1}
///   successor law    S ∈ C_{α+1} ⇔ S ⊆ C_{α+1} ∧ S ≼ C_α  (α ≥ 1, all S of rank ≤ rank budget, |S| ≤ card budget)
///   subsets          S ⊆ C_α within budget ⇒ S ∈ C_{α+1}
///   generator        C_{α+1} = hereditarily ≤ min(card budget, |C_α|) sets of rank ≤ rank budget
inline Report hierarchy_report(SetStore& store, const StageConfig& cfg, bool dump_members = true) {
  Report r("hierarchy", true);
  r.note("stages are truncated by seed rank, rank budget and card budget; laws are checked inside that window");
  const auto stages = build_stages(store, cfg);
  for (const auto& s : stages) {
    if (dump_members)
      print_stage(r, store, s);
    else
      r.line("STAGE " + s.index + " size=" + std::to_string(s.members.size()) + (s.truncated ? " truncated" : ""));
  }
  r.count("c1", stages[1].members.size());

  bool transitive = true;
  for (const auto& s : stages)
    for (auto x : s.members)
      for (auto m : store.members(x))
        if (!stage_contains(store, s, m)) {
          transitive = false;
          r.counterexample(0, "stage " + s.index + " member " + store.to_string(x) + " not a subset");
        }
  r.check("stage-transitive", transitive);

  bool growth = true;
  for (std::size_t k = 0; k + 1 < stages.size(); ++k) {
    const auto& a = stages[k];
    const auto& b = stages[k + 1];
    bool sub = std::all_of(a.members.begin(), a.members.end(), [&](SetHandle x) { return stage_contains(store, b, x); });
    if (!sub || b.members.size() <= a.members.size()) {
      if (a.truncated && sub && b.members.size() == a.members.size()) {
        r.note("stage " + b.index + " equals stage " + a.index + " inside the budget window");
        continue;
      }
      growth = false;
      r.counterexample(0, "stage " + a.index + " not strictly inside stage " + b.index);
    }
  }
  r.check("stage-growth", growth);

  const auto window = rank_universe(store, cfg.rank_budget + 1);
  std::uint64_t law_checks = 0, law_failures = 0, subset_checks = 0, subset_failures = 0;
  bool generator = true;
  for (std::size_t k = 1; k + 1 < stages.size() && stages[k + 1].index != "limit"; ++k) {
    const auto& prev = stages[k];
    const auto& next = stages[k + 1];
    for (auto s : window) {
      const auto ms = store.members(s);
      if (ms.size() > cfg.card_budget) continue;
      ++law_checks;
      const bool lhs = stage_contains(store, next, s);
      const bool inside =
          std::all_of(ms.begin(), ms.end(), [&](SetHandle m) { return stage_contains(store, next, m); });
      const bool rhs = inside && dominates(ms.size(), prev.members.size());
      if (lhs != rhs) {
        ++law_failures;
        r.counterexample(0, "successor law at stage " + next.index + " for " + store.to_string(s));
      }
      const bool in_prev = std::all_of(ms.begin(), ms.end(), [&](SetHandle m) { return stage_contains(store, prev, m); });
      if (in_prev) {
        ++subset_checks;
        if (!lhs) {
          ++subset_failures;
          r.counterexample(0, "subset of stage " + prev.index + " missing from stage " + next.index + ": " +
                                  store.to_string(s));
        }
      }
    }
    const auto h = hereditarily_small(store, std::min(cfg.card_budget, prev.members.size()), cfg.rank_budget);
    if (h != next.members) {
      generator = false;
      r.counterexample(0, "generator disagrees at stage " + next.index);
    }
  }
  r.count("successor-law-checks", law_checks);
  r.count("subset-law-checks", subset_checks);
  r.check("successor-law", law_failures == 0 && law_checks > 0);
  r.check("subsets-enter-next-stage", subset_failures == 0);
  r.check("hereditary-generator", generator);
  return r;
}

// ---- Cantor's diagonal ------------------------------------------------------

struct Diagonal {
  Subset d;                  // {x | x ∉ F(x)}
  std::vector<bool> pivot;   // pivot[x]: x ∈ D (then x ∉ F(x)); otherwise x ∈ F(x)
  bool in_range = false;
};

inline Diagonal diagonal_witness(const std::vector<Subset>& f) {
  Diagonal out;
  for (std::size_t x = 0; x < f.size(); ++x) {
    const bool in_d = !f[x].contains(x);
    if (in_d) out.d.insert(x);
    out.pivot.push_back(in_d);
  }
  for (const auto& s : f) out.in_range = out.in_range || s == out.d;
  return out;
}

/// Every F: A → P(A) for |A| ≤ max_size.
inline Report diagonal_report(std::size_t max_size) {
  if (max_size > 4) throw budget_error("diagonal: |A| capped at 4");
  Report r("diagonal");
  std::uint64_t maps = 0, exceptions = 0, pivot_failures = 0;
  for (std::size_t n = 0; n <= max_size; ++n) {
    const std::uint64_t per = std::uint64_t{1} << n;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= per;
    std::uint64_t at_n = 0;
    std::vector<Subset> f(n);
    for (std::uint64_t code = 0; code < total; ++code) {
      for (std::size_t x = 0, c = code; x < n; ++x, c /= per) f[x] = Subset(c % per);
      const Diagonal dg = diagonal_witness(f);
      ++maps;
      ++at_n;
      if (dg.in_range) {
        ++exceptions;
        r.counterexample(code, "D in range at |A|=" + std::to_string(n));
      }
      for (std::size_t x = 0; x < n; ++x)
        if (dg.pivot[x] == f[x].contains(x) || dg.d.contains(x) == f[x].contains(x)) {
          ++pivot_failures;
          r.counterexample(code, "pivot " + std::to_string(x));
        }
    }
    r.count("maps-size-" + std::to_string(n), at_n);
  }
  r.count("maps", maps);
  r.count("exceptions", exceptions);
  r.check("diagonal", exceptions == 0 && pivot_failures == 0);
  return r;
}

// ---- closure properties of V_d ------------------------------------------------

inline constexpr std::size_t max_axiom_rank = 5;

/// Closure of V_d under the axioms. Power set and pairing fail exactly at rank d − 1.
/// d ≤ 4 builds every image; d = 5 decides membership by rank arithmetic.
inline Report axiom_report(SetStore& store, std::size_t d) {
  if (d == 0 || d > max_axiom_rank) throw budget_error("axiom report: d must be in 1..5");
  const bool by_rank = d == max_axiom_rank;
  Report r("axioms-V" + std::to_string(d), by_rank);
  std::vector<std::size_t> sizes;
  for (std::size_t k = 1; k <= d; ++k) sizes.push_back(rank_universe(store, k).size());
  std::string counts;
  for (auto n : sizes) counts += (counts.empty() ? "" : " ") + std::to_string(n);
  r.line("RANK-UNIVERSE " + counts);
  const auto v = rank_universe(store, d);
  r.count("universe", v.size());
  const auto in_v = [&](SetHandle x) { return store.grounded(x) && *store.rank(x) < d; };

  r.check("axiom-empty", in_v(store.empty()));

  bool foundation = true, union_ok = true, separation = true;
  for (auto x : v) {
    foundation = foundation && store.grounded(x);
    union_ok = union_ok && in_v(store.big_union(x));
    // Subsets of x have rank ≤ rank x; with ≤ 4 members they are built directly.
    const auto ms = store.members(x);
    if (!by_rank && ms.size() <= 4)
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << ms.size()); ++b) {
        std::vector<SetHandle> sub;
        for (std::size_t i = 0; i < ms.size(); ++i)
          if ((b >> i) & 1u) sub.push_back(ms[i]);
        separation = separation && in_v(store.make_set(sub));
      }
  }
  r.check("axiom-foundation", foundation);
  r.check("axiom-union", union_ok);
  r.check("axiom-separation", separation);

  // Power set: P(x) ∈ V_d ⇔ rank x < d − 1.
  std::uint64_t power_fail = 0;
  bool power_boundary = true;
  for (auto x : v) {
    const std::size_t rx = *store.rank(x);
    const bool holds = by_rank ? rx + 1 < d : in_v(store.powerset(x));
    if (!holds) {
      ++power_fail;
      if (power_fail <= 8) r.line("POWERSET-FAILS " + store.to_string(x) + " rank=" + std::to_string(rx));
    }
    power_boundary = power_boundary && (holds == (rx + 1 < d));
  }
  r.count("powerset-failures", power_fail);
  r.check("axiom-powerset-boundary", power_boundary && (d == 1 || power_fail > 0));

  // Pairing: {x, y} ∈ V_d ⇔ both ranks < d − 1.
  bool pair_boundary = true;
  std::uint64_t pair_fail = 0;
  if (by_rank) {
    std::uint64_t top = 0;
    for (auto x : v) top += *store.rank(x) + 1 == d;
    pair_fail = v.size() * v.size() - (v.size() - top) * (v.size() - top);
  } else {
    for (auto x : v)
      for (auto y : v) {
        const bool holds = in_v(store.pair(x, y));
        const bool expected = std::max(*store.rank(x), *store.rank(y)) + 1 < d;
        pair_fail += !holds;
        pair_boundary = pair_boundary && holds == expected;
      }
  }
  r.count("pairing-failures", pair_fail);
  r.check("axiom-pairing-boundary", pair_boundary);

  // Replacement: F: s → V_{d−1} gives F[s] ∈ V_d and F[s] ≼ s.
  bool replacement = true;
  std::uint64_t replacement_maps = 0;
  if (!by_rank) {
    const auto lower = d >= 2 ? rank_universe(store, d - 1) : std::vector<SetHandle>{};
    for (auto s : v) {
      const auto ms = store.members(s);
      if (lower.empty() && !ms.empty()) continue;
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < ms.size(); ++i) total *= lower.size();
      std::vector<SetHandle> img;
      for (std::uint64_t code = 0; code < total; ++code) {
        img.clear();
        for (std::size_t i = 0, c = code; i < ms.size(); ++i, c /= lower.size()) img.push_back(lower[c % lower.size()]);
        const SetHandle fs = store.make_set(img);
        ++replacement_maps;
        replacement = replacement && in_v(fs) && dominates(store.members(fs).size(), ms.size());
      }
    }
    r.count("replacement-maps", replacement_maps);
  }
  r.check("axiom-replacement", replacement);

  // Ord ∩ V_d = the naturals below d.
  std::vector<SetHandle> ords, naturals;
  for (auto x : v)
    if (is_ordinal(store, x)) ords.push_back(x);
  for (std::size_t n = 0; n < d; ++n) naturals.push_back(von_neumann(store, n));
  store.sort_canonical(naturals);
  r.count("ordinals", ords.size());
  r.check("axiom-ord", ords == naturals);
  r.note("infinity is not expressible at finite scale");
  return r;
}

}  // namespace paradox
