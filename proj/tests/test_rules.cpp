#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "paradox/rules.hpp"

using namespace paradox;

namespace {

RuleSystem random_system(std::mt19937_64& rng, std::size_t n, double density) {
  RuleSystem sys = RuleSystem::anonymous(n);
  std::bernoulli_distribution pick(density);
  for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p)
    for (std::size_t x = 0; x < n; ++x)
      if (pick(rng)) sys.add(Subset(p), x);
  return sys;
}

std::vector<SetHandle> ordinals(SetStore& s, std::size_t n) {
  std::vector<SetHandle> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(von_neumann(s, i));
  return out;
}

}  // namespace

TEST_CASE("validate abstract systems", "[rules]") {
  RuleSystem sys({"a", "b"});
  sys.add(Subset{}, 0);
  sys.add(Subset{}, 1);
  const auto v = validate(sys);
  CHECK(v.deterministic);
  CHECK(!v.global);
  CHECK(v.uncovered == Subset::single(0));
  sys.add(Subset::single(0), 0);
  const auto w = validate(sys);
  CHECK(!w.deterministic);
  REQUIRE(w.collision);
  CHECK(w.collision->first.conclusion == 0);
}

TEST_CASE("apply the induced operator", "[rules]") {
  RuleSystem sys({"a"});
  sys.add(Subset{}, 0);
  CHECK(apply_operator(sys, Subset{}) == Subset::single(0));
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto r = random_system(rng, 4, 0.1);
    for (int t = 0; t < 20; ++t) {
      const Subset b(rng() & 0xF);
      const Subset a = b & Subset(rng() & 0xF);
      REQUIRE(apply_operator(r, a).subset_of(apply_operator(r, b)));
    }
  }
}

TEST_CASE("two-step system fixed points", "[rules]") {
  RuleSystem sys({"a", "b", "c"});
  sys.add(Subset{}, 0);
  sys.add(Subset::single(0), 1);
  const auto l = least_fixed_point(sys);
  CHECK(l.result == (Subset::single(0) | Subset::single(1)));
  CHECK(l.stages.size() == 2);
  CHECK(greatest_fixed_point(sys).result == l.result);
}

TEST_CASE("fixed points agree with closed-set oracles", "[rules]") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 1 + k % 4;
    const auto sys = random_system(rng, n, 0.15);
    const auto l = least_fixed_point(sys);
    const auto g = greatest_fixed_point(sys);
    REQUIRE(l.stable);
    REQUIRE(l.result == oracle::lfp(sys));
    REQUIRE(g.result == oracle::gfp(sys));
    REQUIRE(l.result.subset_of(g.result));
    REQUIRE(apply_operator(sys, l.result) == l.result);
    // Leastness: dropping an element of the last stage breaks closure.
    if (!l.stages.empty()) {
      for (auto x : l.stages.back().elements()) {
        Subset smaller = l.result;
        smaller.erase(x);
        REQUIRE(!apply_operator(sys, smaller).subset_of(smaller));
      }
    }
  }
}

TEST_CASE("the least fixed point lies inside the underived class", "[rules]") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    const auto sys = random_system(rng, 1 + k % 4, 0.2);
    REQUIRE(least_fixed_point(sys).result.subset_of(underived_class(sys)));
  }
  // {b} |- a with b never derivable: a is in J but not in the least fixed point.
  RuleSystem sys({"a", "b"});
  sys.add(Subset::single(1), 0);
  CHECK(underived_class(sys) == Subset::single(0));
  CHECK(least_fixed_point(sys).result.empty());
}

TEST_CASE("stage budget marks an unstable result", "[rules]") {
  RuleSystem sys = RuleSystem::anonymous(4);
  sys.add(Subset{}, 0);
  sys.add(Subset::single(0), 1);
  sys.add(Subset::single(1), 2);
  sys.add(Subset::single(2), 3);
  const auto l = least_fixed_point(sys, 2);
  CHECK(!l.stable);
  CHECK(l.result.size() == 2);
}

TEST_CASE("deterministic lemma and the finite corollary", "[rules]") {
  const auto r = corollary_report(1000, 7);
  CHECK(r.passed());
  const auto& ls = r.lines();
  CHECK(std::find(ls.begin(), ls.end(), "COUNT exhaustive2-systems 256") != ls.end());
  CHECK(std::find(ls.begin(), ls.end(), "COUNT exhaustive2-det_global 0") != ls.end());
  CHECK(std::find(ls.begin(), ls.end(), "COUNT deterministic3-deterministic 729") != ls.end());
}

TEST_CASE("adjoin schema truncated at rank 2", "[rules]") {
  SetStore s;
  StoreSystem sys;
  sys.rank_bound = 2;
  sys.schemas = {Schema::adjoin};
  const auto l = least_fixed_point(s, sys);
  CHECK(l.result == rank_universe(s, 3));
  CHECK(l.stages.size() == 3);
}

TEST_CASE("ordinal system", "[rules]") {
  SetStore s;
  StoreSystem ord;
  ord.rank_bound = 4;
  ord.schemas = {Schema::successor, Schema::union_};
  const auto l = least_fixed_point(s, ord);
  CHECK(l.result == ordinals(s, 5));
  const auto phi = apply_operator(s, ord, {von_neumann(s, 0), von_neumann(s, 1)}, std::nullopt);
  CHECK(phi == ordinals(s, 3));

  ord.rank_bound = 3;
  const auto v = validate(expand(s, ord));
  CHECK(v.global);
  CHECK(!v.deterministic);
  CHECK(ord_operator_report(6).passed());
}

TEST_CASE("singleton and powerset together stay deterministic", "[rules]") {
  SetStore s;
  StoreSystem sys;
  sys.rank_bound = 3;
  sys.schemas = {Schema::singleton, Schema::powerset};
  std::vector<SetHandle> objects;
  const auto abs = expand(s, sys, &objects);
  CHECK(objects.size() == 16);
  CHECK(validate(abs).deterministic);
  sys.rank_bound = 4;
  CHECK_THROWS_AS(expand(s, sys), budget_error);
}

TEST_CASE("function mode productivity", "[rules]") {
  SetStore s;
  StoreSystem sing;
  sing.rank_bound = 4;
  sing.function = parse_set_function(s, "singleton");
  const auto r = store_productivity_report(s, sing);
  CHECK(r.passed());

  StoreSystem constant;
  constant.rank_bound = 3;
  constant.function = parse_set_function(s, "const:1");
  const auto c = store_productivity_report(s, constant);
  CHECK(!c.passed());
  const auto& ls = c.lines();
  CHECK(std::find(ls.begin(), ls.end(), "COUNTEREXAMPLE 0 s={{{}}} has no conclusion in L\\s") != ls.end());
}

TEST_CASE("rules files", "[rules]") {
  SetStore s;
  const auto f = parse_rules("space a b c\nrule {} -> a\nrule {a} -> b # comment\n", s);
  REQUIRE(!f.is_store());
  CHECK(std::get<RuleSystem>(f.system).rules().size() == 2);
  const auto g = parse_rules("store rank<=2\nschema adjoin\n", s);
  REQUIRE(g.is_store());
  CHECK(std::get<StoreSystem>(g.system).rank_bound == 2);
  const auto h = parse_rules("store rank<=3\nfunction pair:1\n", s);
  CHECK(std::get<StoreSystem>(h.system).function.has_value());

  CHECK_THROWS_AS(parse_rules("rule {} -> a\n", s), input_error);
  CHECK_THROWS_AS(parse_rules("space a\nrule {b} -> a\n", s), input_error);
  CHECK_THROWS_AS(parse_rules("space a\nrule {a} a\n", s), input_error);
  CHECK_THROWS_AS(parse_rules("space a\nschema union\n", s), input_error);
  CHECK_THROWS_AS(parse_rules("store rank<=x\n", s), input_error);
  CHECK_THROWS_AS(parse_rules("store rank<=2\n", s), input_error);
  CHECK_THROWS_AS(parse_rules("store rank<=2\nschema cube\n", s), input_error);
  CHECK_THROWS_AS(parse_rules("", s), input_error);
  try {
    parse_rules("space a b\nrule {a} -> b\nrule {a} -> z\n", s);
    FAIL("expected input_error");
  } catch (const input_error& e) {
    CHECK(e.line() == 3);
  }
}
