#include <catch_amalgamated.hpp>

#include "paradox/hierarchy.hpp"

using namespace paradox;

TEST_CASE("finite domination", "[hierarchy]") {
  CHECK(dominates(0, 0));
  CHECK(!dominates(1, 0));
  CHECK(dominates(2, 3));
  CHECK(!dominates(3, 2));
  // Reflexive and transitive on nonempty sizes; ∅ is the minimum.
  for (std::size_t a = 1; a <= 5; ++a) {
    CHECK(dominates(a, a));
    CHECK(dominates(0, a));
    for (std::size_t b = 1; b <= 5; ++b)
      for (std::size_t c = 1; c <= 5; ++c)
        if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
  }
}

TEST_CASE("stages at seed rank 2", "[hierarchy]") {
  SetStore s;
  const auto stages = build_stages(s, StageConfig{});
  REQUIRE(stages.size() == 3);
  CHECK(stages[0].members.empty());
  CHECK(stages[1].members == rank_universe(s, 3));
  CHECK(stages[2].members.size() == 16);
  CHECK(hierarchy_report(s, StageConfig{}).passed());
}

TEST_CASE("stage laws under a tight card budget", "[hierarchy]") {
  SetStore s;
  StageConfig cfg;
  cfg.stages = 3;
  cfg.seed_rank = 1;
  cfg.card_budget = 2;
  cfg.rank_budget = 4;
  cfg.limit = true;
  const auto stages = build_stages(s, cfg);
  CHECK(stages[1].members.size() == 2);
  CHECK(stages.back().index == "limit");
  CHECK(stages[2].members == hereditarily_small(s, 2, 4));
  CHECK(hierarchy_report(s, cfg, false).passed());
}

TEST_CASE("stage budgets", "[hierarchy]") {
  SetStore s;
  StageConfig cfg;
  cfg.rank_budget = 5;
  CHECK_THROWS_AS(build_stages(s, cfg), budget_error);
  cfg.rank_budget = 3;
  cfg.stages = 0;
  CHECK_THROWS_AS(build_stages(s, cfg), precondition_error);
}

TEST_CASE("diagonal witnesses", "[hierarchy]") {
  const auto a = diagonal_witness({Subset::single(0)});
  CHECK(a.d.empty());
  CHECK(!a.in_range);
  const auto b = diagonal_witness({Subset{}});
  CHECK(b.d == Subset::single(0));
  CHECK(!b.in_range);
  const auto r = diagonal_report(3);
  CHECK(r.passed());
  const auto& ls = r.lines();
  CHECK(std::find(ls.begin(), ls.end(), "COUNT maps-size-3 512") != ls.end());
  CHECK_THROWS_AS(diagonal_report(5), budget_error);
}

TEST_CASE("axiom reports", "[hierarchy]") {
  SetStore s;
  const auto r3 = axiom_report(s, 3);
  CHECK(r3.passed());
  const auto& ls = r3.lines();
  CHECK(std::find(ls.begin(), ls.end(), "POWERSET-FAILS {{{}}} rank=2") != ls.end());
  CHECK(std::find(ls.begin(), ls.end(), "POWERSET-FAILS {{},{{}}} rank=2") != ls.end());
  CHECK(std::find(ls.begin(), ls.end(), "COUNT powerset-failures 2") != ls.end());
  const auto r4 = axiom_report(s, 4);
  CHECK(r4.passed());
  CHECK(std::find(r4.lines().begin(), r4.lines().end(), "RANK-UNIVERSE 1 2 4 16") != r4.lines().end());
  CHECK_THROWS_AS(axiom_report(s, 6), budget_error);
}
