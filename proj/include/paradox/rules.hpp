#pragma once

// Rule systems Φ: s ⊢ x, the induced monotone operator
//   φ(s) = {x | ∃a ⊆ s, a ⊢ x},
// least and greatest fixed points, and productivity on the least fixed point.
//
// Two carriers: an abstract RuleSystem over at most 64 named objects, and a
// StoreSystem of schemas over grounded sets of rank ≤ K that expands lazily.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "paradox/catalog.hpp"
#include "paradox/error.hpp"
#include "paradox/hf_store.hpp"
#include "paradox/report.hpp"
#include "paradox/subset.hpp"

namespace paradox {

struct Rule {
  Subset premise;
  std::size_t conclusion = 0;
  friend bool operator==(const Rule&, const Rule&) = default;
  friend auto operator<=>(const Rule& a, const Rule& b) {
    if (a.conclusion != b.conclusion) return a.conclusion <=> b.conclusion;
    return a.premise.bits() <=> b.premise.bits();
  }
};

/// Subset sweeps over the whole space (globality, greatest fixed points) stop here.
inline constexpr std::size_t max_sweep_objects = 20;
inline constexpr std::size_t default_stage_budget = 64;

class RuleSystem {
 public:
  RuleSystem() = default;
  explicit RuleSystem(std::vector<std::string> objects) : objects_(std::move(objects)) {
    require_small_domain(objects_.size(), "rule system");
  }
  /// Objects named o0..o{n-1}.
  static RuleSystem anonymous(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("o" + std::to_string(i));
    return RuleSystem(std::move(names));
  }

  std::size_t size() const { return objects_.size(); }
  Subset space() const { return Subset::full(objects_.size()); }
  const std::vector<std::string>& objects() const { return objects_; }
  const std::string& name(std::size_t i) const { return objects_.at(i); }
  std::optional<std::size_t> find(std::string_view label) const {
    for (std::size_t i = 0; i < objects_.size(); ++i)
      if (objects_[i] == label) return i;
    return std::nullopt;
  }

  void add(Subset premise, std::size_t conclusion) {
    if (conclusion >= size() || !premise.subset_of(space()))
      throw precondition_error("rule outside the object space");
    const Rule r{premise, conclusion};
    auto it = std::lower_bound(rules_.begin(), rules_.end(), r);
    if (it == rules_.end() || !(*it == r)) rules_.insert(it, r);
  }

  /// Sorted by (conclusion, premise), no duplicates.
  const std::vector<Rule>& rules() const { return rules_; }

  std::string rule_string(const Rule& r) const { return to_string(r.premise, objects_) + " -> " + name(r.conclusion); }

 private:
  std::vector<std::string> objects_;
  std::vector<Rule> rules_;
};

inline Subset apply_operator(const RuleSystem& sys, Subset s) {
  Subset out;
  for (const auto& r : sys.rules())
    if (r.premise.subset_of(s)) out.insert(r.conclusion);
  return out;
}

struct Validation {
  bool deterministic = true;
  std::optional<std::pair<Rule, Rule>> collision;  // same conclusion, different premises
  bool global = true;
  std::optional<Subset> uncovered;  // a premise with no rule
};

inline Validation validate(const RuleSystem& sys) {
  if (sys.size() > max_sweep_objects)
    throw budget_error("validate: globality sweep over " + std::to_string(sys.size()) + " objects");
  Validation v;
  const auto& rs = sys.rules();
  for (std::size_t i = 1; i < rs.size() && v.deterministic; ++i)
    if (rs[i].conclusion == rs[i - 1].conclusion) {
      v.deterministic = false;
      v.collision = std::make_pair(rs[i - 1], rs[i]);
    }
  std::vector<bool> covered(std::size_t{1} << sys.size(), false);
  for (const auto& r : rs) covered[r.premise.bits()] = true;
  for (std::size_t b = 0; b < covered.size(); ++b)
    if (!covered[b]) {
      v.global = false;
      v.uncovered = Subset(b);
      break;
    }
  return v;
}

struct FixedPoint {
  Subset result;
  std::vector<Subset> stages;  // elements added (least) or removed (greatest) per stage
  bool stable = true;
};

/// Iterates φ from ∅; `stages` lists the additions of each round.
inline FixedPoint least_fixed_point(const RuleSystem& sys, std::size_t stage_budget = default_stage_budget) {
  FixedPoint fp;
  for (std::size_t k = 0;; ++k) {
    const Subset next = apply_operator(sys, fp.result) | fp.result;
    if (next == fp.result) break;
    if (k == stage_budget) {
      fp.stable = false;
      break;
    }
    fp.stages.push_back(next - fp.result);
    fp.result = next;
  }
  return fp;
}

/// Iterates φ downward from the full space; `stages` lists the removals of each round.
inline FixedPoint greatest_fixed_point(const RuleSystem& sys, std::size_t stage_budget = default_stage_budget) {
  FixedPoint fp;
  fp.result = sys.space();
  for (std::size_t k = 0;; ++k) {
    const Subset next = apply_operator(sys, fp.result) & fp.result;
    if (next == fp.result) break;
    if (k == stage_budget) {
      fp.stable = false;
      break;
    }
    fp.stages.push_back(fp.result - next);
    fp.result = next;
  }
  return fp;
}

/// Every s ⊆ L has a rule s ⊢ x with x ∈ L ∖ s (premise exactly s).
inline std::optional<Subset> unproductive_subset(const RuleSystem& sys, Subset l) {
  std::vector<bool> good(std::size_t{1} << sys.size(), false);
  for (const auto& r : sys.rules())
    if (r.premise.subset_of(l) && l.contains(r.conclusion) && !r.premise.contains(r.conclusion))
      good[r.premise.bits()] = true;
  const std::uint64_t lb = l.bits();
  for (std::uint64_t sb = lb;; sb = (sb - 1) & lb) {
    if (!good[sb]) return Subset(sb);
    if (sb == 0) break;
  }
  return std::nullopt;
}

/// Every s ⊆ L has φ(s) ⊄ s.
inline std::optional<Subset> operator_unproductive_subset(const RuleSystem& sys, Subset l) {
  const std::uint64_t lb = l.bits();
  for (std::uint64_t sb = lb;; sb = (sb - 1) & lb) {
    if (apply_operator(sys, Subset(sb)).subset_of(Subset(sb))) return Subset(sb);
    if (sb == 0) break;
  }
  return std::nullopt;
}

/// J = {x | ∃a (a ⊢ x and x ∉ a)}.
inline Subset underived_class(const RuleSystem& sys) {
  Subset j;
  for (const auto& r : sys.rules())
    if (!r.premise.contains(r.conclusion)) j.insert(r.conclusion);
  return j;
}

// ---- reports for abstract systems -----------------------------------------

inline void report_validation(Report& r, const RuleSystem& sys, const Validation& v, bool bounded_globality) {
  r.line(std::string("DETERMINISTIC ") + (v.deterministic ? "yes" : "no"));
  if (v.collision)
    r.line("COLLISION " + sys.rule_string(v.collision->first) + " | " + sys.rule_string(v.collision->second));
  r.line(std::string(bounded_globality ? "GLOBAL-BOUNDED " : "GLOBAL ") + (v.global ? "yes" : "no"));
  if (v.uncovered) r.line("UNCOVERED " + to_string(*v.uncovered, sys.objects()));
  if (bounded_globality) r.note("globality quantifies only over premises inside the rank budget");
}

inline void report_fixed_point(Report& r, const RuleSystem& sys, const FixedPoint& fp, const char* kind) {
  for (std::size_t k = 0; k < fp.stages.size(); ++k)
    r.line("STAGE " + std::to_string(k + 1) + " " + to_string(fp.stages[k], sys.objects()));
  r.line(std::string(kind) + " " + to_string(fp.result, sys.objects()));
  r.count("size", fp.result.size());
  r.count("stages", fp.stages.size());
  r.line(std::string("STABLE ") + (fp.stable ? "yes" : "no"));
}

inline Report productivity_report(const RuleSystem& sys, std::size_t stage_budget = default_stage_budget) {
  if (sys.size() > max_sweep_objects) throw budget_error("productivity: subset sweep too large");
  Report r("rules-productivity");
  const FixedPoint fp = least_fixed_point(sys, stage_budget);
  if (!fp.stable) r.mark_bounded();
  r.line("LFP " + to_string(fp.result, sys.objects()));
  const auto bad = unproductive_subset(sys, fp.result);
  if (bad) r.counterexample(0, "no rule s -> x with x in L\\s for s=" + to_string(*bad, sys.objects()));
  r.check("productive-system", !bad);
  const auto bad_op = operator_unproductive_subset(sys, fp.result);
  if (bad_op) r.counterexample(0, "phi(s) inside s for s=" + to_string(*bad_op, sys.objects()));
  r.check("productive-operator", !bad_op);
  return r;
}

// ---- deterministic and global systems ---------------------------------------

struct CorollaryTally {
  std::uint64_t systems = 0, deterministic = 0, global = 0, det_global = 0, det_global_productive = 0;
  std::uint64_t lemma_rules = 0, lemma_failures = 0;
};

/// det ∧ global ⇒ productive on L, and for deterministic systems the lemma
/// s ⊆ J ∧ s ⊢ x ⇒ x ∈ J ∖ s.
inline void tally_corollary(const RuleSystem& sys, CorollaryTally& t, Report& r) {
  ++t.systems;
  const Validation v = validate(sys);
  t.deterministic += v.deterministic;
  t.global += v.global;
  if (v.deterministic && v.global) {
    ++t.det_global;
    const Subset l = least_fixed_point(sys).result;
    if (!unproductive_subset(sys, l))
      ++t.det_global_productive;
    else
      r.counterexample(0, "deterministic global system not productive on its least fixed point");
  }
  if (v.deterministic) {
    const Subset j = underived_class(sys);
    for (const auto& rule : sys.rules()) {
      if (!rule.premise.subset_of(j)) continue;
      ++t.lemma_rules;
      if (!j.contains(rule.conclusion) || rule.premise.contains(rule.conclusion)) {
        ++t.lemma_failures;
        r.counterexample(0, "lemma fails at " + sys.rule_string(rule));
      }
    }
  }
}

/// Relation over n objects from a bitmask over the (premise, conclusion) grid.
inline RuleSystem relation_from_bits(std::size_t n, std::uint64_t bits) {
  RuleSystem sys = RuleSystem::anonymous(n);
  const std::uint64_t premises = std::uint64_t{1} << n;
  for (std::uint64_t p = 0; p < premises; ++p)
    for (std::size_t x = 0; x < n; ++x)
      if ((bits >> (p * n + x)) & 1u) sys.add(Subset(p), x);
  return sys;
}

/// All relations on 2 objects, `samples` random relations and every
/// deterministic system on 3 objects.
inline Report corollary_report(std::size_t samples, std::uint64_t seed) {
  Report r("corollary");
  CorollaryTally two, sampled, det3;
  for (std::uint64_t bits = 0; bits < 256; ++bits) tally_corollary(relation_from_bits(2, bits), two, r);
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) tally_corollary(relation_from_bits(3, rng() & 0xFFFFFFu), sampled, r);
  // Deterministic on 3 objects: each conclusion has no premise or exactly one of 8.
  for (std::uint64_t code = 0; code < 729; ++code) {
    RuleSystem sys = RuleSystem::anonymous(3);
    for (std::size_t x = 0, c = code; x < 3; ++x, c /= 9)
      if (c % 9 != 8) sys.add(Subset(c % 9), x);
    tally_corollary(sys, det3, r);
  }
  const auto emit = [&](const std::string& tag, const CorollaryTally& t) {
    r.count(tag + "-systems", t.systems);
    r.count(tag + "-deterministic", t.deterministic);
    r.count(tag + "-global", t.global);
    r.count(tag + "-det_global", t.det_global);
    r.count(tag + "-det_global_productive", t.det_global_productive);
    r.count(tag + "-lemma_rules", t.lemma_rules);
  };
  emit("exhaustive2", two);
  emit("sampled3", sampled);
  emit("deterministic3", det3);
  r.note("deterministic and global needs 2^n distinct conclusions among n objects, so no finite system has both");
  r.check("corollary-det-global-productive",
          two.det_global == two.det_global_productive && sampled.det_global == sampled.det_global_productive &&
              det3.det_global == det3.det_global_productive && two.systems == 256 && sampled.systems >= 1000);
  r.check("corollary-lemma", two.lemma_failures + sampled.lemma_failures + det3.lemma_failures == 0);
  return r;
}

// ---- store schemas ---------------------------------------------------------

enum class Schema { singleton, powerset, adjoin, union_, successor };

inline const char* to_string(Schema s) {
  switch (s) {
    case Schema::singleton: return "singleton";
    case Schema::powerset: return "powerset";
    case Schema::adjoin: return "adjoin";
    case Schema::union_: return "union";
    case Schema::successor: return "successor";
  }
  return "?";
}

/// Schemas over grounded sets; conclusions beyond rank_bound are dropped.
///   singleton  s ⊢ {s}       powerset  s ⊢ P(s)       union  s ⊢ ∪s
///   adjoin     ∅ ⊢ ∅ and {x, y} ⊢ x ∪ {y} (x = y allowed)
///   successor  {x} ⊢ x ∪ {x}
///   function F s ⊢ F(s)
struct StoreSystem {
  std::size_t rank_bound = 3;
  std::vector<Schema> schemas;
  std::optional<SetFunction> function;

  bool small_premises_only() const {
    if (function) return false;
    return std::all_of(schemas.begin(), schemas.end(),
                       [](Schema s) { return s == Schema::adjoin || s == Schema::successor; });
  }

  /// Conclusions of premise a (members in canonical order); `bound` empty means untruncated.
  std::vector<SetHandle> conclusions(SetStore& store, const std::vector<SetHandle>& a,
                                     std::optional<std::size_t> bound) const {
    std::vector<SetHandle> out;
    std::size_t premise_rank = 0;
    for (auto m : a) premise_rank = std::max(premise_rank, *store.rank(m) + 1);
    const auto fits = [&](std::size_t rank) { return !bound || rank <= *bound; };
    const auto premise = [&] { return store.make_set(a); };
    for (Schema s : schemas) {
      switch (s) {
        case Schema::singleton:
          if (fits(premise_rank + 1)) out.push_back(store.singleton(premise()));
          break;
        case Schema::powerset:
          if (fits(premise_rank + 1)) out.push_back(store.powerset(premise()));
          break;
        case Schema::union_: out.push_back(store.big_union(premise())); break;
        case Schema::successor:
          if (a.size() == 1 && fits(*store.rank(a[0]) + 1)) out.push_back(store.successor(a[0]));
          break;
        case Schema::adjoin:
          if (a.empty()) out.push_back(store.empty());
          if (a.size() > 2) break;
          for (auto x : a)
            for (auto y : a) {
              const SetHandle z = store.adjoin(x, y);
              if (fits(*store.rank(z))) out.push_back(z);
            }
          break;
      }
    }
    if (function) {
      const SetHandle s = premise();
      const auto rk = function->rank_of_image(store, s);
      if (rk && fits(*rk)) out.push_back((*function)(store, s));
    }
    store.sort_canonical(out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::string describe() const {
    std::string d = "store rank<=" + std::to_string(rank_bound);
    for (auto s : schemas) d += std::string(" ") + to_string(s);
    return d;
  }
};

/// Premises enumerated per stage stop here (subsets of the current stage).
inline constexpr std::size_t default_premise_budget = std::size_t{1} << 16;

/// Calls f(members) for every subset of `pool` (sizes ≤ 2 when `small`).
template <class F>
void for_each_premise(const std::vector<SetHandle>& pool, bool small, std::size_t premise_budget, F&& f) {
  std::vector<SetHandle> a;
  if (small) {
    f(a);
    for (std::size_t i = 0; i < pool.size(); ++i) {
      f(std::vector<SetHandle>{pool[i]});
      for (std::size_t j = i + 1; j < pool.size(); ++j) f(std::vector<SetHandle>{pool[i], pool[j]});
    }
    return;
  }
  if (pool.size() >= 63 || (std::uint64_t{1} << pool.size()) > premise_budget)
    throw budget_error("premise sweep over " + std::to_string(pool.size()) + " sets exceeds the budget");
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << pool.size()); ++b) {
    a.clear();
    for (std::size_t i = 0; i < pool.size(); ++i)
      if ((b >> i) & 1u) a.push_back(pool[i]);
    f(a);
  }
}

/// φ(s) on handles; `bound` empty means untruncated.
inline std::vector<SetHandle> apply_operator(SetStore& store, const StoreSystem& sys, const std::vector<SetHandle>& s,
                                             std::optional<std::size_t> bound,
                                             std::size_t premise_budget = default_premise_budget) {
  std::vector<SetHandle> out;
  for_each_premise(s, sys.small_premises_only(), premise_budget, [&](const std::vector<SetHandle>& a) {
    for (auto x : sys.conclusions(store, a, bound)) out.push_back(x);
  });
  store.sort_canonical(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct StoreFixedPoint {
  std::vector<SetHandle> result;               // canonical order
  std::vector<std::vector<SetHandle>> stages;  // additions per stage
  bool stable = true;
};

inline StoreFixedPoint least_fixed_point(SetStore& store, const StoreSystem& sys,
                                         std::size_t stage_budget = default_stage_budget,
                                         std::size_t premise_budget = default_premise_budget) {
  StoreFixedPoint fp;
  for (std::size_t k = 0;; ++k) {
    auto next = apply_operator(store, sys, fp.result, sys.rank_bound, premise_budget);
    std::vector<SetHandle> added;
    for (auto x : next)
      if (!std::binary_search(fp.result.begin(), fp.result.end(), x, store.canonical_less())) added.push_back(x);
    if (added.empty()) break;
    if (k == stage_budget) {
      fp.stable = false;
      break;
    }
    fp.result.insert(fp.result.end(), added.begin(), added.end());
    store.sort_canonical(fp.result);
    fp.stages.push_back(std::move(added));
  }
  return fp;
}

/// Largest rank for which a store system still expands to an abstract RuleSystem.
inline constexpr std::size_t max_expand_rank = 3;

/// The abstract system on V_{K+1}: every subset of the space is a premise.
inline RuleSystem expand(SetStore& store, const StoreSystem& sys, std::vector<SetHandle>* objects_out = nullptr) {
  if (sys.rank_bound > max_expand_rank)
    throw budget_error("expand: rank bound " + std::to_string(sys.rank_bound) + " exceeds " +
                       std::to_string(max_expand_rank));
  const auto objects = rank_universe(store, sys.rank_bound + 1);
  std::vector<std::string> names;
  std::unordered_map<std::uint32_t, std::size_t> index;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    names.push_back(store.to_string(objects[i]));
    index.emplace(objects[i].id, i);
  }
  RuleSystem out(names);
  std::vector<Rule> rules;
  std::vector<SetHandle> a;
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << objects.size()); ++b) {
    a.clear();
    for (std::size_t i = 0; i < objects.size(); ++i)
      if ((b >> i) & 1u) a.push_back(objects[i]);
    if (sys.small_premises_only() && a.size() > 2) continue;
    for (auto x : sys.conclusions(store, a, sys.rank_bound)) rules.push_back(Rule{Subset(b), index.at(x.id)});
  }
  for (const auto& r : rules) out.add(r.premise, r.conclusion);
  if (objects_out) *objects_out = objects;
  return out;
}

// ---- rules files -------------------------------------------------------------

struct RulesFile {
  std::variant<RuleSystem, StoreSystem> system;
  bool is_store() const { return std::holds_alternative<StoreSystem>(system); }
};

/// Set notation over the space: `{a,b}` or `{}`.
inline Subset parse_premise(const RuleSystem& sys, std::string_view text, std::size_t line) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw input_error("premise must be written {a,b,...}", line);
  Subset s;
  std::string inner(text.substr(1, text.size() - 2));
  std::replace(inner.begin(), inner.end(), ',', ' ');
  std::istringstream is(inner);
  std::string name;
  while (is >> name) {
    auto i = sys.find(name);
    if (!i) throw input_error("unknown object '" + name + "'", line);
    s.insert(*i);
  }
  return s;
}

inline RulesFile parse_rules(std::string_view text, SetStore& store) {
  static const std::regex name_re("[A-Za-z0-9_]+");
  std::optional<RuleSystem> abstract;
  std::optional<StoreSystem> schema_sys;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "space") {
      if (abstract || schema_sys) throw input_error("space declared twice", line);
      std::vector<std::string> names;
      std::string n;
      while (ls >> n) {
        if (!std::regex_match(n, name_re)) throw input_error("bad object name '" + n + "'", line);
        if (std::find(names.begin(), names.end(), n) != names.end())
          throw input_error("duplicate object '" + n + "'", line);
        names.push_back(n);
      }
      if (names.size() > 64) throw input_error("at most 64 objects", line);
      abstract = RuleSystem(std::move(names));
    } else if (head == "store") {
      if (abstract || schema_sys) throw input_error("space declared twice", line);
      std::string bound, extra;
      ls >> bound;
      static const std::regex bound_re("rank<=([0-9]{1,2})");
      std::smatch m;
      if (!std::regex_match(bound, m, bound_re) || (ls >> extra))
        throw input_error("expected 'store rank<=K'", line);
      schema_sys = StoreSystem{};
      schema_sys->rank_bound = std::stoul(m[1]);
    } else if (head == "rule") {
      if (!abstract) throw input_error("rule lines need a preceding 'space' line", line);
      std::string rest;
      std::getline(ls, rest);
      const auto arrow = rest.find("->");
      if (arrow == std::string::npos) throw input_error("expected 'rule {..} -> x'", line);
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
      };
      const std::string lhs = trim(rest.substr(0, arrow));
      const std::string rhs = trim(rest.substr(arrow + 2));
      const Subset premise = parse_premise(*abstract, lhs, line);
      const auto x = abstract->find(rhs);
      if (!x) throw input_error("unknown object '" + rhs + "'", line);
      abstract->add(premise, *x);
    } else if (head == "schema") {
      if (!schema_sys) throw input_error("schema lines need a preceding 'store rank<=K' line", line);
      std::string s, extra;
      ls >> s;
      if (ls >> extra) throw input_error("one schema per line", line);
      Schema k;
      if (s == "singleton")
        k = Schema::singleton;
      else if (s == "powerset")
        k = Schema::powerset;
      else if (s == "adjoin")
        k = Schema::adjoin;
      else if (s == "union")
        k = Schema::union_;
      else if (s == "successor")
        k = Schema::successor;
      else
        throw input_error("unknown schema '" + s + "'", line);
      if (std::find(schema_sys->schemas.begin(), schema_sys->schemas.end(), k) == schema_sys->schemas.end())
        schema_sys->schemas.push_back(k);
    } else if (head == "function") {
      if (!schema_sys) throw input_error("function lines need a preceding 'store rank<=K' line", line);
      if (schema_sys->function) throw input_error("one function per file", line);
      std::string f, extra;
      ls >> f;
      if (ls >> extra) throw input_error("one function per line", line);
      try {
        schema_sys->function = parse_set_function(store, f);
      } catch (const input_error& e) {
        throw input_error(e.what(), line);
      }
    } else {
      throw input_error("unknown declaration '" + head + "'", line);
    }
  }
  if (abstract) return RulesFile{std::move(*abstract)};
  if (schema_sys) {
    if (schema_sys->schemas.empty() && !schema_sys->function) throw input_error("store system has no schemas");
    return RulesFile{std::move(*schema_sys)};
  }
  throw input_error("missing 'space' or 'store' line");
}

// ---- command reports ---------------------------------------------------------

inline Report rules_validate_report(SetStore& store, const RulesFile& file) {
  Report r("rules-validate");
  if (const auto* sys = std::get_if<RuleSystem>(&file.system)) {
    const Validation v = validate(*sys);
    r.count("objects", sys->size());
    r.count("rules", sys->rules().size());
    report_validation(r, *sys, v, false);
    return r;
  }
  const auto& ss = std::get<StoreSystem>(file.system);
  r.mark_bounded();
  r.line("SYSTEM " + ss.describe());
  const RuleSystem sys = expand(store, ss);
  const Validation v = validate(sys);
  r.count("objects", sys.size());
  r.count("rules", sys.rules().size());
  report_validation(r, sys, v, true);
  return r;
}

inline Report rules_fixed_point_report(SetStore& store, const RulesFile& file, bool least, std::size_t stage_budget) {
  Report r(least ? "rules-lfp" : "rules-gfp");
  if (const auto* sys = std::get_if<RuleSystem>(&file.system)) {
    const FixedPoint fp = least ? least_fixed_point(*sys, stage_budget) : greatest_fixed_point(*sys, stage_budget);
    if (!fp.stable) r.mark_bounded();
    report_fixed_point(r, *sys, fp, least ? "LFP" : "GFP");
    return r;
  }
  const auto& ss = std::get<StoreSystem>(file.system);
  r.mark_bounded();
  r.line("SYSTEM " + ss.describe());
  if (!least) {
    const RuleSystem sys = expand(store, ss);
    const FixedPoint fp = greatest_fixed_point(sys, stage_budget);
    report_fixed_point(r, sys, fp, "GFP");
    return r;
  }
  const StoreFixedPoint fp = least_fixed_point(store, ss, stage_budget);
  auto names = [&](const std::vector<SetHandle>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + store.to_string(v[i]);
    return s + "}";
  };
  for (std::size_t k = 0; k < fp.stages.size(); ++k)
    r.line("STAGE " + std::to_string(k + 1) + " " + names(fp.stages[k]));
  r.line("LFP " + names(fp.result));
  r.count("size", fp.result.size());
  r.count("stages", fp.stages.size());
  r.line(std::string("STABLE ") + (fp.stable ? "yes" : "no"));
  return r;
}

/// Store-mode productivity: swept premises are s ⊆ L of rank ≤ K − 1, so no
/// conclusion of s is cut by truncation (function mode also needs rank F(s) ≤ K).
inline Report store_productivity_report(SetStore& store, const StoreSystem& ss,
                                        std::size_t stage_budget = default_stage_budget) {
  Report r("rules-productivity", true);
  r.line("SYSTEM " + ss.describe() + (ss.function ? " function " + ss.function->name(store) : ""));
  const StoreFixedPoint fp = least_fixed_point(store, ss, stage_budget);
  r.count("lfp-size", fp.result.size());
  std::vector<SetHandle> pool;
  for (auto x : fp.result)
    if (ss.rank_bound >= 2 && *store.rank(x) <= ss.rank_bound - 2) pool.push_back(x);
  const auto in_l = [&](SetHandle x) {
    return std::binary_search(fp.result.begin(), fp.result.end(), x, store.canonical_less());
  };
  std::uint64_t swept = 0, system_fail = 0, operator_fail = 0, outside_j = 0;
  for_each_premise(pool, false, default_premise_budget, [&](const std::vector<SetHandle>& a) {
    const SetHandle s = store.make_set(a);
    if (ss.function) {
      auto rk = ss.function->rank_of_image(store, s);
      if (!rk || *rk > ss.rank_bound) return;
    }
    ++swept;
    bool found = false;
    for (auto x : ss.conclusions(store, a, ss.rank_bound))
      if (in_l(x) && !store.contains(s, x)) {
        found = true;
        if (ss.function && !in_injective_image(store, *ss.function, x)) {
          ++outside_j;
          r.counterexample(0, "witness " + store.to_string(x) + " outside {F(x) | F(x) notin x}");
        }
        break;
      }
    if (!found) {
      ++system_fail;
      r.counterexample(0, "s=" + store.to_string(s) + " has no conclusion in L\\s");
    }
    bool grows = false;
    for (auto x : apply_operator(store, ss, a, std::nullopt))
      if (!store.contains(s, x)) grows = true;
    if (!grows) {
      ++operator_fail;
      r.counterexample(0, "phi(s) inside s for s=" + store.to_string(s));
    }
  });
  r.count("swept", swept);
  r.check("productive-system", system_fail == 0);
  r.check("productive-operator", operator_fail == 0);
  if (ss.function) r.check("witnesses-in-image-class", outside_j == 0);
  return r;
}

inline Report rules_productivity_report(SetStore& store, const RulesFile& file, std::size_t stage_budget) {
  if (const auto* sys = std::get_if<RuleSystem>(&file.system)) return productivity_report(*sys, stage_budget);
  return store_productivity_report(store, std::get<StoreSystem>(file.system), stage_budget);
}

/// ORD: {α} ⊢ α ∪ {α}, s ⊢ ∪s. For every s ⊆ {0..k−1}, φ(s) ∖ s ≠ ∅ (untruncated).
inline Report ord_operator_report(std::size_t k) {
  if (k > 12) throw budget_error("ord: at most 12 ordinals");
  Report r("ord-operator");
  SetStore store;
  StoreSystem ord;
  ord.schemas = {Schema::successor, Schema::union_};
  std::vector<SetHandle> ordinals;
  for (std::size_t i = 0; i < k; ++i) ordinals.push_back(von_neumann(store, i));
  std::uint64_t swept = 0, fails = 0;
  for_each_premise(ordinals, false, default_premise_budget, [&](const std::vector<SetHandle>& s) {
    ++swept;
    const SetHandle ss = store.make_set(s);
    bool grows = false;
    for (auto x : apply_operator(store, ord, s, std::nullopt)) grows = grows || !store.contains(ss, x);
    if (!grows) {
      ++fails;
      r.counterexample(0, "s=" + store.to_string(ss));
    }
  });
  r.count("swept", swept);
  r.check("ord-operator-productive", fails == 0);
  return r;
}

}  // namespace paradox
