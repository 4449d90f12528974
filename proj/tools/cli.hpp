#pragma once

// paradox-lab command line. run() never exits the process; it returns
//   0 all checks pass or a verdict was computed
//   1 a FAIL or COUNTEREXAMPLE line was reported
//   2 usage or input error
//   3 budget exceeded
// Errors print one machine line "E_<CODE> <text>" on the error stream.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "paradox/catalog.hpp"
#include "paradox/formula.hpp"
#include "paradox/hierarchy.hpp"
#include "paradox/limitation.hpp"
#include "paradox/model.hpp"
#include "paradox/productivity.hpp"
#include "paradox/rules.hpp"

namespace paradox::cli {

enum ExitCode : int { ok = 0, failed = 1, usage = 2, budget = 3 };

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Options {
  std::string report_path;
  std::uint64_t seed = 1;
  bool unsafe = false;

  // check
  std::string check_what;
  std::size_t max_universe = 3;
  std::size_t class_universe = 4;
  std::size_t depth = 2;
  std::string mutation = "none";
  std::size_t samples = 1000;
  std::size_t ordinals = 6;

  // classify
  std::string universe_path;
  std::string class_text;

  // catalog
  std::string which;
  std::size_t rank_universe = 3;
  std::size_t stores = 100;

  // rules
  std::string rules_what;
  std::string rules_path;
  std::size_t stage_budget = default_stage_budget;

  // hierarchy
  StageConfig stages;
  bool axiom_report = false;
  std::optional<std::size_t> axiom_rank;

  // diagonal
  std::size_t diagonal_size = 3;

  // los
  std::string los_mode;
  std::size_t los_stages = 3;
  std::size_t threshold = 2;
  std::size_t ground = 3;
  bool with_omega = false;
  bool omega_case = false;
  std::optional<std::uint64_t> trace;
};

inline SweepLimits limits(const Options& o) {
  return o.unsafe ? SweepLimits{5, 4} : SweepLimits{};
}

inline Mutation parse_mutation(const std::string& s) {
  if (s == "none") return Mutation::none;
  for (auto m : all_mutations)
    if (s == to_string(m)) return m;
  throw input_error("unknown mutation '" + s + "'");
}

/// Every connective mutation of the evaluator must be caught by the formula sweep.
inline Report mutation_report(std::size_t max_n, std::size_t depth, SweepLimits lim) {
  Report r("mutations");
  bool all_caught = true;
  for (auto mu : all_mutations) {
    const Report sweep = verify_principle_formula_level(max_n, depth, mu, lim);
    r.line(std::string("MUTATION ") + to_string(mu) + " counterexamples=" + std::to_string(sweep.counterexamples()));
    all_caught = all_caught && sweep.counterexamples() > 0;
  }
  r.check("mutation-sensitivity", all_caught);
  return r;
}

inline std::vector<Report> run_check(const Options& o) {
  const SweepLimits lim = limits(o);
  std::vector<Report> out;
  const std::string& w = o.check_what;
  if (w == "principle") {
    out.push_back(verify_principle_formula_level(o.max_universe, o.depth, Mutation::none, lim));
    out.push_back(verify_principle_class_level(o.max_universe, lim));
    Report sum("principle");
    sum.check("principle", out[0].passed() && out[1].passed());
    out.push_back(sum);
  } else if (w == "principle-formulas") {
    out.push_back(verify_principle_formula_level(o.max_universe, o.depth, parse_mutation(o.mutation), lim));
  } else if (w == "principle-classes") {
    out.push_back(verify_principle_class_level(o.class_universe, lim));
  } else if (w == "russell") {
    out.push_back(russell_unrepresentability(o.class_universe, lim));
  } else if (w == "identity") {
    out.push_back(identity_productive_sweep(o.max_universe, lim));
  } else if (w == "certificates") {
    out.push_back(certificate_soundness_sweep(o.max_universe, lim));
  } else if (w == "mutations") {
    out.push_back(mutation_report(o.max_universe, o.depth, lim));
  } else if (w == "corollary") {
    out.push_back(corollary_report(o.samples, o.seed));
  } else if (w == "ord") {
    out.push_back(ord_operator_report(o.ordinals));
  } else {
    throw input_error("unknown check '" + w + "'");
  }
  return out;
}

inline std::vector<Report> run_classify(const Options& o) {
  const Structure m = load_structure(read_file(o.universe_path));
  const ClassTerm t = parse_class_term(o.class_text);
  const ClassRef c = class_extension(m, t);
  Report r("classify");
  r.line("CLASS " + to_string(t) + " = " + to_string(m, c.extension));
  const Verdict v = decide(m, c);
  report_verdict(r, m, c.extension, v);
  r.check("certificate", validate_verdict(m, c.extension, v));
  return {r};
}

inline std::vector<Report> run_catalog(const Options& o) {
  const std::string& w = o.which;
  if (w == "russell" || w == "sikic") return {catalog_structure_sweep(w, 2, o.max_universe)};
  if (w.rfind("rn:", 0) == 0) {
    const std::string n = w.substr(3);
    if (n.empty() || n.size() > 2 || n.find_first_not_of("0123456789") != std::string::npos)
      throw input_error("rn:N needs a small natural N");
    return {catalog_structure_sweep("rn", std::stoul(n), o.max_universe)};
  }
  if (w == "ni" || w == "wf") return {catalog_store_identity(w, o.rank_universe)};
  if (w == "nwf") return {catalog_nwf(o.stores, o.seed)};
  if (w == "sikic:union" || w == "sikic:intersection") return {catalog_sikic_store(w.substr(6), o.rank_universe)};
  if (w.rfind("inj:", 0) == 0) {
    SetStore store;
    return {catalog_injective(store, parse_set_function(store, w.substr(4)), o.rank_universe)};
  }
  throw input_error("unknown catalog class '" + w + "'");
}

inline std::vector<Report> run_rules(const Options& o) {
  SetStore store;
  const RulesFile file = parse_rules(read_file(o.rules_path), store);
  if (o.rules_what == "validate") return {rules_validate_report(store, file)};
  if (o.rules_what == "lfp") return {rules_fixed_point_report(store, file, true, o.stage_budget)};
  if (o.rules_what == "gfp") return {rules_fixed_point_report(store, file, false, o.stage_budget)};
  if (o.rules_what == "productivity") return {rules_productivity_report(store, file, o.stage_budget)};
  throw input_error("unknown rules command '" + o.rules_what + "'");
}

inline std::vector<Report> run_hierarchy(const Options& o) {
  SetStore store;
  std::vector<Report> out{hierarchy_report(store, o.stages)};
  if (o.axiom_report || o.axiom_rank) out.push_back(axiom_report(store, o.axiom_rank.value_or(4)));
  return out;
}

inline std::vector<Report> run_los(const Options& o) {
  std::optional<Subset> trace;
  if (o.trace) trace.emplace(*o.trace);
  if (o.omega_case) return {omega_case(o.los_stages)};
  if (o.los_mode == "cumulative") {
    SetStore store;
    return {los_check(cumulative_system(store, o.los_stages, o.with_omega), trace)};
  }
  if (o.los_mode == "cardinal") return {los_check(cardinal_system(o.threshold, o.ground), trace)};
  if (o.los_mode == "zermelo") return {los_zermelo_exhaustive(o.ground)};
  throw input_error("unknown los mode '" + o.los_mode + "'");
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"paradox-lab: finite checks of the productivity principle"};
  app.name("paradox-lab");
  app.require_subcommand(1);
  app.add_option("--report", o.report_path, "write the report to this file instead of stdout");
  app.add_option("--seed", o.seed, "seed for sampled sweeps");
  app.add_flag("--unsafe-budget", o.unsafe, "lift the universe and depth caps; reports become bounded");

  auto* check = app.add_subcommand("check", "exhaustive sweeps");
  check->add_option("what", o.check_what,
                    "principle | principle-formulas | principle-classes | russell | identity | certificates | "
                    "mutations | corollary | ord")
      ->required();
  check->add_option("--max-universe", o.max_universe, "largest structure size (formula sweeps)");
  check->add_option("--class-universe", o.class_universe, "largest structure size (class sweeps)");
  check->add_option("--formula-depth", o.depth, "connective budget for enumerated formulas");
  check->add_option("--mutation", o.mutation, "evaluator mutation for principle-formulas");
  check->add_option("--samples", o.samples, "sampled 3-object systems for corollary");
  check->add_option("--ordinals", o.ordinals, "ordinal count for ord");

  auto* classify = app.add_subcommand("classify", "decide one class in one universe");
  classify->add_option("--universe", o.universe_path, "structure file")->required();
  classify->add_option("--class", o.class_text, "class term { x | ... }")->required();

  auto* catalog = app.add_subcommand("catalog", "classic paradoxical classes");
  catalog->add_option("--which", o.which, "russell | rn:N | ni | wf | nwf | sikic | sikic:union | "
                                          "sikic:intersection | inj:OP")
      ->required();
  catalog->add_option("--max-universe", o.max_universe, "structure sweep size");
  catalog->add_option("--rank-universe", o.rank_universe, "V_d for store-level classes");
  catalog->add_option("--stores", o.stores, "generated stores for nwf");

  auto* rules = app.add_subcommand("rules", "rule systems");
  rules->add_option("what", o.rules_what, "validate | lfp | gfp | productivity")->required();
  rules->add_option("--rules", o.rules_path, "rules file")->required();
  rules->add_option("--budget", o.stage_budget, "stage budget for fixed points");

  auto* hierarchy = app.add_subcommand("hierarchy", "cumulative-cardinal stages");
  std::string hierarchy_what;
  hierarchy->add_option("what", hierarchy_what, "build")->required();
  hierarchy->add_option("--stages", o.stages.stages, "stage count");
  hierarchy->add_option("--seed-rank", o.stages.seed_rank, "rank truncation of C_1");
  hierarchy->add_option("--card-budget", o.stages.card_budget, "largest member count");
  hierarchy->add_option("--rank-budget", o.stages.rank_budget, "largest rank");
  hierarchy->add_flag("--limit", o.stages.limit, "append a limit stage");
  hierarchy->add_flag("--axiom-report", o.axiom_report, "closure report for V_d");
  hierarchy->add_option("--rank-universe", o.axiom_rank, "d for the axiom report (default 4)");

  auto* diagonal = app.add_subcommand("diagonal", "Cantor diagonal over every map A -> P(A)");
  diagonal->add_option("--size", o.diagonal_size, "largest |A|");

  auto* los = app.add_subcommand("los", "limitation-of-size biconditionals");
  los->add_option("--mode", o.los_mode, "cumulative | cardinal | zermelo")->required();
  los->add_option("--stages", o.los_stages, "cumulative: ground V_d");
  los->add_option("--threshold", o.threshold, "cardinal: sets have fewer elements");
  los->add_option("--ground", o.ground, "cardinal: ground size; zermelo: largest ground");
  los->add_flag("--with-omega", o.with_omega, "cumulative: add the self-singleton to the ground");
  los->add_flag("--omega-case", o.omega_case, "the self-singleton discussion case");
  los->add_option("--trace", o.trace, "class bitmap whose escapes are listed");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "E_USAGE " << e.what() << '\n';
    return usage;
  }

  std::vector<Report> reports;
  try {
    if (check->parsed())
      reports = run_check(o);
    else if (classify->parsed())
      reports = run_classify(o);
    else if (catalog->parsed())
      reports = run_catalog(o);
    else if (rules->parsed())
      reports = run_rules(o);
    else if (hierarchy->parsed()) {
      if (hierarchy_what != "build") throw input_error("unknown hierarchy command '" + hierarchy_what + "'");
      reports = run_hierarchy(o);
    } else if (diagonal->parsed())
      reports = {diagonal_report(o.diagonal_size)};
    else if (los->parsed())
      reports = run_los(o);
  } catch (const budget_error& e) {
    err << "E_BUDGET " << e.what() << '\n';
    return budget;
  } catch (const precondition_error& e) {
    err << "E_PRECONDITION " << e.what() << '\n';
    return usage;
  } catch (const input_error& e) {
    err << "E_INPUT " << e.what() << '\n';
    return usage;
  }

  std::ostringstream text;
  bool pass = true;
  for (auto& r : reports) {
    if (o.unsafe) r.mark_bounded();
    text << r.str();
    pass = pass && r.passed();
  }
  if (o.report_path.empty()) {
    out << text.str();
  } else {
    std::ofstream f(o.report_path, std::ios::binary);
    if (!f) {
      err << "E_INPUT cannot write '" << o.report_path << "'\n";
      return usage;
    }
    f << text.str();
  }
  return pass ? ok : failed;
}

}  // namespace paradox::cli
