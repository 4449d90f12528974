#pragma once

// Limitation-of-size biconditionals over a finite SetSystem.
//
// For every C ⊆ ground:  C ∉ sets  ⇔  every set s ⊆ C has an escape.
//   cumulative: sets are the subsets of the stages V_0..V_{d-1}; the ground is
//               V_d (optionally with Ω). Escape: ∃α (s ⊆ V_α ∧ ∃x ∈ C ∖ V_α).
//   cardinal:   sets are the subsets with fewer than k elements. Escape: the
//               enumeration of s extends, i.e. ∃x ∈ C ∖ s.
//   zermelo:    sets are an arbitrary family. Escape: ∃x ∈ C ∖ s.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paradox/hf_store.hpp"
#include "paradox/model.hpp"
#include "paradox/productivity.hpp"
#include "paradox/report.hpp"
#include "paradox/subset.hpp"

namespace paradox {

enum class LosMode { cumulative, cardinal, zermelo };

inline const char* to_string(LosMode m) {
  switch (m) {
    case LosMode::cumulative: return "cumulative";
    case LosMode::cardinal: return "cardinal";
    case LosMode::zermelo: return "zermelo";
  }
  return "?";
}

struct SetSystem {
  LosMode mode = LosMode::zermelo;
  std::vector<std::string> ground;  // element labels
  std::vector<Subset> stages;       // cumulative: V_0 ⊆ V_1 ⊆ ...
  std::size_t threshold = 0;        // cardinal: sets have < threshold elements
  std::vector<Subset> family;       // zermelo: designated sets

  Subset domain() const { return Subset::full(ground.size()); }

  bool is_set(Subset s) const {
    switch (mode) {
      case LosMode::cumulative:
        for (auto v : stages)
          if (s.subset_of(v)) return true;
        return false;
      case LosMode::cardinal: return s.size() < threshold;
      case LosMode::zermelo:
        for (auto f : family)
          if (f == s) return true;
        return false;
    }
    return false;
  }

  /// The mode's escape for set s inside C, as (stage index or none, element).
  std::optional<std::pair<std::optional<std::size_t>, std::size_t>> escape(Subset s, Subset c) const {
    if (mode == LosMode::cumulative) {
      for (std::size_t a = 0; a < stages.size(); ++a)
        if (s.subset_of(stages[a]))
          if (auto x = (c - stages[a]).least()) return std::make_pair(std::optional<std::size_t>(a), *x);
      return std::nullopt;
    }
    if (auto x = (c - s).least()) return std::make_pair(std::optional<std::size_t>(), *x);
    return std::nullopt;
  }
};

inline constexpr std::size_t max_los_ground = 16;

/// The biconditional for every C ⊆ ground. Escapes are listed for `trace_class` when given.
inline Report los_check(const SetSystem& sys, std::optional<Subset> trace_class = std::nullopt) {
  const std::size_t g = sys.ground.size();
  if (g > max_los_ground)
    throw budget_error("los: ground of " + std::to_string(g) + " elements exceeds " + std::to_string(max_los_ground));
  Report r(std::string("los-") + to_string(sys.mode));
  std::uint64_t classes = 0, paradoxical = 0, agree = 0;
  const std::uint64_t total = std::uint64_t{1} << g;
  for (std::uint64_t cb = 0; cb < total; ++cb) {
    const Subset c(cb);
    ++classes;
    const bool too_big = !sys.is_set(c);
    bool productive = true;
    // All submasks of C, including ∅ and C itself.
    for (std::uint64_t sb = cb;; sb = (sb - 1) & cb) {
      const Subset s(sb);
      if (sys.is_set(s)) {
        auto esc = sys.escape(s, c);
        if (!esc) productive = false;
        if (trace_class && *trace_class == c) {
          std::string stage = esc && esc->first ? " stage=" + std::to_string(*esc->first) : "";
          r.line("ESCAPE " + to_string(s, sys.ground) + " -> " +
                 (esc ? sys.ground[esc->second] + stage : std::string("none")));
        }
      }
      if (sb == 0) break;
    }
    if (too_big) ++paradoxical;
    if (too_big == productive)
      ++agree;
    else
      r.counterexample(cb, "class " + to_string(c, sys.ground) + (too_big ? " too big, no escape" : " small, escapes"));
    if (trace_class && *trace_class == c)
      r.line("CLASSIFY " + to_string(c, sys.ground) + (too_big ? " PARADOXICAL" : " SET"));
  }
  r.count("classes", classes);
  r.count("paradoxical", paradoxical);
  r.count("agree", agree);
  r.check(std::string("los-") + to_string(sys.mode), agree == classes);
  return r;
}

/// Ground V_d (plus Ω when asked), sets = subsets of V_0..V_{d-1}.
inline SetSystem cumulative_system(SetStore& store, std::size_t d, bool with_omega = false) {
  if (d == 0) throw precondition_error("cumulative: need d >= 1");
  auto vd = rank_universe(store, d);
  SetSystem sys;
  sys.mode = LosMode::cumulative;
  std::vector<SetHandle> ground = vd;
  if (with_omega) ground.push_back(store.canonicalize(MembershipGraph{1, {{0, 0}}, 0}));
  if (ground.size() > max_los_ground) throw budget_error("cumulative: ground too large for d=" + std::to_string(d));
  for (auto h : ground) sys.ground.push_back(store.grounded(h) ? store.to_string(h) : "Omega");
  for (std::size_t a = 0; a < d; ++a) {
    Subset stage;
    for (std::size_t i = 0; i < ground.size(); ++i) {
      auto rk = store.rank(ground[i]);
      if (rk && *rk < a) stage.insert(i);
    }
    sys.stages.push_back(stage);
  }
  return sys;
}

inline SetSystem cardinal_system(std::size_t k, std::size_t g) {
  SetSystem sys;
  sys.mode = LosMode::cardinal;
  sys.threshold = k;
  for (std::size_t i = 0; i < g; ++i) sys.ground.push_back("e" + std::to_string(i));
  return sys;
}

inline SetSystem zermelo_system(std::size_t g, std::vector<Subset> family) {
  SetSystem sys;
  sys.mode = LosMode::zermelo;
  for (std::size_t i = 0; i < g; ++i) sys.ground.push_back("e" + std::to_string(i));
  sys.family = std::move(family);
  return sys;
}

/// Zermelo mode over every family on every ground of size ≤ max_g.
inline Report los_zermelo_exhaustive(std::size_t max_g) {
  if (max_g > 4) throw budget_error("zermelo: exhaustive family sweep capped at ground 4");
  Report r("los-zermelo");
  std::uint64_t families = 0, classes = 0, bad = 0;
  for (std::size_t g = 0; g <= max_g; ++g) {
    const std::uint64_t subsets = std::uint64_t{1} << g;
    const std::uint64_t family_count = std::uint64_t{1} << subsets;
    for (std::uint64_t fb = 0; fb < family_count; ++fb) {
      ++families;
      // fb is the indicator of the family over subset codes.
      for (std::uint64_t cb = 0; cb < subsets; ++cb) {
        ++classes;
        const bool too_big = ((fb >> cb) & 1u) == 0;
        bool productive = true;
        for (std::uint64_t sb = cb;; sb = (sb - 1) & cb) {
          if (((fb >> sb) & 1u) && (Subset(cb) - Subset(sb)).empty()) productive = false;
          if (sb == 0) break;
        }
        if (too_big != productive) {
          ++bad;
          r.counterexample(fb, "g=" + std::to_string(g) + " class=" + std::to_string(cb));
        }
      }
    }
  }
  r.count("families", families);
  r.count("classes", classes);
  r.check("los-zermelo", bad == 0);
  return r;
}

/// The Ω case: decide({Ω}) = set in the self-loop universe with no productive
/// choice, and the cumulative system over V_d ∪ {Ω} calls {Ω} paradoxical.
inline Report omega_case(std::size_t d = 3) {
  Report r("omega");
  Structure m(1);
  m.set_member(0, 0);
  m.set_labels({"omega"});
  const Subset c = Subset::single(0);
  const Verdict v = decide(m, c);
  report_verdict(r, m, c, v);
  const bool no_choice = blocks_productive_choice(m, c);
  r.line(std::string("PRODUCTIVE-CHOICE ") + (no_choice ? "none" : "exists"));
  r.check("omega-set-in-self-loop", v.is_set() && v.representative == 0);
  r.check("omega-no-productive-choice", no_choice);

  SetStore store;
  const SetSystem sys = cumulative_system(store, d, true);
  const Subset omega_class = Subset::single(sys.ground.size() - 1);
  Report cum = los_check(sys, omega_class);
  const bool too_big = !sys.is_set(omega_class);
  auto esc = sys.escape(Subset{}, omega_class);
  r.merge(cum);
  r.check("omega-paradoxical-cumulative", too_big && esc && esc->second == sys.ground.size() - 1);
  return r;
}

}  // namespace paradox
