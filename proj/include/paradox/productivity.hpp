#pragma once

// Deciding set vs paradoxical in a finite structure through productive
// choices, and exhaustive checks of the productivity principle.
//
// Class level: C is unrepresented ⇔ every represented s ⊆ C leaves some
// x ∈ C ∖ ext(s). Formula level: for every φ(x),
//   ¬∃s ∀x (x ∈ s ↔ φ)  ↔  ∀s (∀x (x ∈ s → φ) → ∃x (x ∉ s ∧ φ)).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "paradox/formula.hpp"
#include "paradox/model.hpp"
#include "paradox/report.hpp"
#include "paradox/subset.hpp"

namespace paradox {

/// set(e) when e represents C; otherwise a certificate whose witness for each
/// represented s ⊆ C is the least element of C ∖ ext(s).
inline Verdict decide(const Structure& m, Subset c) {
  Verdict v;
  if (auto e = is_represented(m, c)) {
    v.status = Verdict::Status::set;
    v.representative = e;
    return v;
  }
  v.status = Verdict::Status::paradoxical;
  for (std::size_t e = 0; e < m.size(); ++e) {
    const Subset ext = m.extension_of(e);
    if (!ext.subset_of(c)) continue;
    v.certificate.entries.push_back({e, *(c - ext).least()});
  }
  return v;
}
inline Verdict decide(const Structure& m, const ClassRef& c) { return decide(m, c.extension); }

/// Re-derives a verdict from membership lookups alone.
inline bool validate_verdict(const Structure& m, Subset c, const Verdict& v) {
  if (v.is_set()) return v.representative && *v.representative < m.size() && m.extension_of(*v.representative) == c;
  std::size_t k = 0;
  for (std::size_t e = 0; e < m.size(); ++e) {
    bool inside = true;
    for (std::size_t x = 0; x < m.size(); ++x)
      if (m.member(x, e) && !c.contains(x)) inside = false;
    if (!inside) continue;
    if (k >= v.certificate.entries.size()) return false;
    const auto& entry = v.certificate.entries[k++];
    if (entry.subset_element != e) return false;
    if (entry.witness >= m.size() || !c.contains(entry.witness) || m.member(entry.witness, e)) return false;
  }
  return k == v.certificate.entries.size();
}

/// True when some represented s ⊆ C has C ∖ ext(s) = ∅, i.e. no productive choice exists.
inline bool blocks_productive_choice(const Structure& m, Subset c) {
  for (std::size_t e = 0; e < m.size(); ++e) {
    const Subset ext = m.extension_of(e);
    if (ext.subset_of(c) && (c - ext).empty()) return true;
  }
  return false;
}

/// Appends VERDICT / WITNESS lines for `v`.
inline void report_verdict(Report& r, const Structure& m, Subset c, const Verdict& v) {
  if (v.is_set()) {
    r.line("VERDICT SET " + m.name(*v.representative));
    return;
  }
  r.line("VERDICT PARADOXICAL");
  for (const auto& e : v.certificate.entries) r.witness(c.bits(), m.name(e.subset_element), m.name(e.witness));
}

// ---- exhaustive sweeps ------------------------------------------------------

struct SweepLimits {
  std::size_t max_universe = 4;
  std::size_t max_depth = 3;
};

/// Both sides of the formula-level principle for every structure of size
/// ≤ max_n and every enumerated φ of depth ≤ depth. Evaluation uses `mu`.
inline Report verify_principle_formula_level(std::size_t max_n, std::size_t depth, Mutation mu = Mutation::none,
                                             SweepLimits limits = {}) {
  if (max_n > limits.max_universe)
    throw budget_error("principle-formulas: universe " + std::to_string(max_n) + " exceeds cap " +
                       std::to_string(limits.max_universe));
  Report r("principle-formulas");
  const auto formulas = enumerate_formulas(depth, {"x"}, limits.max_depth);
  std::vector<CompiledFormula> lhs, rhs;
  lhs.reserve(formulas.size());
  rhs.reserve(formulas.size());
  for (const auto& phi : formulas) {
    lhs.emplace_back(principle_lhs(phi), std::vector<std::string>{}, std::vector<std::string>{});
    rhs.emplace_back(principle_rhs(phi), std::vector<std::string>{}, std::vector<std::string>{});
  }
  std::uint64_t structures = 0, checks = 0, agree = 0;
  for (std::size_t n = 0; n <= max_n; ++n) {
    for_each_structure(
        n,
        [&](const Structure& m) {
          ++structures;
          for (std::size_t i = 0; i < formulas.size(); ++i) {
            ++checks;
            const bool l = lhs[i].eval(m, {}, {}, mu);
            const bool rr = rhs[i].eval(m, {}, {}, mu);
            if (l == rr) {
              ++agree;
            } else {
              r.counterexample(m.bitmap(), "n=" + std::to_string(n) + " phi=\"" + to_string(formulas[i]) +
                                               "\" lhs=" + (l ? "1" : "0") + " rhs=" + (rr ? "1" : "0"));
            }
          }
        },
        limits.max_universe);
  }
  r.count("structures", structures);
  r.count("formulas", formulas.size());
  r.count("checks", checks);
  r.count("agree", agree);
  r.count("counterexamples", r.counterexamples());
  if (mu != Mutation::none) r.note(std::string("mutation ") + to_string(mu));
  r.check("principle-formula-level", r.counterexamples() == 0);
  return r;
}

/// Class-level principle over every structure of size ≤ max_n and every C.
inline Report verify_principle_class_level(std::size_t max_n, SweepLimits limits = {}) {
  if (max_n > limits.max_universe)
    throw budget_error("principle-classes: universe " + std::to_string(max_n) + " exceeds cap " +
                       std::to_string(limits.max_universe));
  Report r("principle-classes");
  std::uint64_t structures = 0, classes = 0, paradoxical = 0, bad = 0;
  for (std::size_t n = 0; n <= max_n; ++n) {
    const std::uint64_t class_count = std::uint64_t{1} << n;
    for_each_structure(
        n,
        [&](const Structure& m) {
          ++structures;
          for (std::uint64_t cb = 0; cb < class_count; ++cb) {
            ++classes;
            const Subset c(cb);
            const bool unrepresented = !is_represented(m, c).has_value();
            bool productive = true;
            for (std::size_t e = 0; e < n && productive; ++e) {
              const Subset ext = m.extension_of(e);
              if (ext.subset_of(c) && (c - ext).empty()) productive = false;
            }
            if (unrepresented) ++paradoxical;
            if (unrepresented != productive) {
              ++bad;
              r.counterexample(m.bitmap(), "n=" + std::to_string(n) + " class=" + std::to_string(cb));
            }
          }
        },
        limits.max_universe);
  }
  r.count("structures", structures);
  r.count("classes", classes);
  r.count("paradoxical", paradoxical);
  r.count("counterexamples", bad);
  r.check("principle-class-level", bad == 0);
  return r;
}

/// {x | x ∉ x} is never represented; the extension is computed through the formula module.
inline Report russell_unrepresentability(std::size_t max_n, SweepLimits limits = {}) {
  if (max_n > limits.max_universe)
    throw budget_error("russell: universe " + std::to_string(max_n) + " exceeds cap " +
                       std::to_string(limits.max_universe));
  Report r("russell");
  const ClassTerm term = parse_class_term("{ x | x notin x }");
  const CompiledFormula body(term.body, {term.var}, {});
  std::uint64_t structures = 0, unrepresented = 0;
  for (std::size_t n = 0; n <= max_n; ++n) {
    for_each_structure(
        n,
        [&](const Structure& m) {
          ++structures;
          Subset ext;
          for (std::size_t e = 0; e < n; ++e) {
            std::size_t arg[1] = {e};
            if (body.eval(m, arg, {})) ext.insert(e);
          }
          if (is_represented(m, ext))
            r.counterexample(m.bitmap(), "russell extension " + to_string(ext) + " represented");
          else
            ++unrepresented;
        },
        limits.max_universe);
  }
  r.count("structures", structures);
  r.count("unrepresented", unrepresented);
  r.check("russell-unrepresented", unrepresented == structures);
  return r;
}

// ---- identity-productive classes -------------------------------------------

/// ∀e (ext(e) ⊆ C ⇒ e ∈ C ∧ e ∉ ext(e)); the model form of P(C) ⊆ C ∩ R.
inline bool identity_productive(const Structure& m, Subset c) {
  for (std::size_t e = 0; e < m.size(); ++e) {
    const Subset ext = m.extension_of(e);
    if (ext.subset_of(c) && (!c.contains(e) || ext.contains(e))) return false;
  }
  return true;
}

inline bool transitive_class(const Structure& m, Subset c) {
  bool ok = true;
  c.for_each([&](std::size_t e) { ok = ok && m.extension_of(e).subset_of(c); });
  return ok;
}

inline Subset russell_extension(const Structure& m) {
  Subset r;
  for (std::size_t e = 0; e < m.size(); ++e)
    if (!m.member(e, e)) r.insert(e);
  return r;
}

struct IdentityProductiveSummary {
  std::vector<Subset> family;
  bool intersection_closed = true;
  bool wf_least = true;
  bool transitive_in_russell = true;
};

inline IdentityProductiveSummary analyze_identity_productive(const Structure& m) {
  IdentityProductiveSummary s;
  const std::uint64_t count = std::uint64_t{1} << m.size();
  for (std::uint64_t cb = 0; cb < count; ++cb)
    if (identity_productive(m, Subset(cb))) s.family.push_back(Subset(cb));
  for (std::size_t i = 0; i < s.family.size(); ++i)
    for (std::size_t j = i + 1; j < s.family.size(); ++j)
      if (!identity_productive(m, s.family[i] & s.family[j])) s.intersection_closed = false;
  const Subset wf = grounded_elements(m);
  bool wf_member = false;
  for (auto c : s.family) {
    if (!wf.subset_of(c)) s.wf_least = false;
    if (c == wf) wf_member = true;
    if (transitive_class(m, c) && !c.subset_of(russell_extension(m))) s.transitive_in_russell = false;
  }
  if (!wf_member) s.wf_least = false;
  return s;
}

/// Lists identity-productive classes of one structure and the three closure checks.
inline Report identity_productive_report(const Structure& m) {
  Report r("identity-productive");
  auto s = analyze_identity_productive(m);
  for (auto c : s.family) r.line("CLASS " + std::to_string(c.bits()) + " " + to_string(m, c));
  r.count("classes", s.family.size());
  r.line("WF " + to_string(m, grounded_elements(m)));
  r.check("intersection-closed", s.intersection_closed);
  r.check("wf-least", s.wf_least);
  r.check("transitive-in-russell", s.transitive_in_russell);
  return r;
}

/// The three checks over every structure of size ≤ max_n.
inline Report identity_productive_sweep(std::size_t max_n, SweepLimits limits = {}) {
  if (max_n > limits.max_universe)
    throw budget_error("identity: universe " + std::to_string(max_n) + " exceeds cap " +
                       std::to_string(limits.max_universe));
  Report r("identity-productive");
  std::uint64_t structures = 0, classes = 0, fail1 = 0, fail2 = 0, fail3 = 0;
  for (std::size_t n = 0; n <= max_n; ++n)
    for_each_structure(
        n,
        [&](const Structure& m) {
          ++structures;
          auto s = analyze_identity_productive(m);
          classes += s.family.size();
          if (!s.intersection_closed) {
            ++fail1;
            r.counterexample(m.bitmap(), "intersection-closed");
          }
          if (!s.wf_least) {
            ++fail2;
            r.counterexample(m.bitmap(), "wf-least");
          }
          if (!s.transitive_in_russell) {
            ++fail3;
            r.counterexample(m.bitmap(), "transitive-in-russell");
          }
        },
        limits.max_universe);
  r.count("structures", structures);
  r.count("identity-productive-classes", classes);
  r.check("intersection-closed", fail1 == 0);
  r.check("wf-least", fail2 == 0);
  r.check("transitive-in-russell", fail3 == 0);
  return r;
}

/// Every verdict over structures of size ≤ max_n re-validates, and decide
/// agrees with is_represented.
inline Report certificate_soundness_sweep(std::size_t max_n, SweepLimits limits = {}) {
  if (max_n > limits.max_universe)
    throw budget_error("certificates: universe " + std::to_string(max_n) + " exceeds cap " +
                       std::to_string(limits.max_universe));
  Report r("certificates");
  std::uint64_t verdicts = 0;
  for (std::size_t n = 0; n <= max_n; ++n)
    for_each_structure(
        n,
        [&](const Structure& m) {
          for (std::uint64_t cb = 0; cb < (std::uint64_t{1} << n); ++cb) {
            ++verdicts;
            const Subset c(cb);
            const Verdict v = decide(m, c);
            if (!validate_verdict(m, c, v) || v.is_set() != is_represented(m, c).has_value())
              r.counterexample(m.bitmap(), "class=" + std::to_string(cb));
          }
        },
        limits.max_universe);
  r.count("verdicts", verdicts);
  r.check("certificates-valid", r.counterexamples() == 0);
  return r;
}

}  // namespace paradox
