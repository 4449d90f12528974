#include <catch_amalgamated.hpp>

#include <algorithm>

#include <random>

#include "oracles.hpp"
#include "paradox/hf_store.hpp"

using namespace paradox;

namespace {

SetHandle omega(SetStore& s) { return s.canonicalize(MembershipGraph{1, {{0, 0}}, 0}); }

}  // namespace

TEST_CASE("constructors build the expected grounded sets", "[hf_store]") {
  SetStore s;
  const auto e = s.empty();
  const auto one = s.singleton(e);
  CHECK(s.adjoin(e, e) == one);
  CHECK(s.to_string(s.ordered_pair(e, one)) == "{{{}},{{},{{}}}}");
  CHECK(s.powerset(one) == s.make_set({e, one}));
  CHECK(s.successor(one) == s.make_set({e, one}));
  CHECK(s.big_union(s.make_set({one, s.singleton(one)})) == s.make_set({e, one}));
  CHECK(s.pair(e, e) == one);
  CHECK(s.construct(SetOp::empty, {}) == e);
  CHECK_THROWS_AS(s.construct(SetOp::pair, std::vector<SetHandle>{e}), precondition_error);
}

TEST_CASE("powerset budget", "[hf_store]") {
  SetStore s;
  const auto v3 = s.make_set(rank_universe(s, 3));
  CHECK_THROWS_AS(s.powerset(v3, 8), budget_error);
  CHECK(s.members(s.powerset(v3)).size() == 16);
}

TEST_CASE("canonicalize small graphs", "[hf_store]") {
  SetStore s;
  CHECK(s.canonicalize(MembershipGraph{1, {}, 0}) == s.empty());
  const auto o = omega(s);
  CHECK(std::ranges::equal(s.members(o), std::vector<SetHandle>{o}));
  CHECK(!s.grounded(o));
  // n1 ∈ n2, n1 ∈ n3, root 0 has children n2, n3.
  MembershipGraph g{4, {{1, 2}, {1, 3}, {2, 0}, {3, 0}}, 0};
  const auto root = s.canonicalize(g);
  CHECK(oracle::quotient_size(g) == 3);
  CHECK(s.transitive_closure(root).size() == 3);
  CHECK(root == s.singleton(s.singleton(s.empty())));
}

TEST_CASE("out-of-range graph indices are input errors", "[hf_store]") {
  SetStore s;
  CHECK_THROWS_AS(s.canonicalize(MembershipGraph{2, {{0, 5}}, 0}), input_error);
  CHECK_THROWS_AS(s.canonicalize(MembershipGraph{2, {}, 2}), input_error);
  CHECK_THROWS_AS(parse_membership_graph("nodes 2\nedge 0 x\n"), input_error);
  try {
    parse_membership_graph("nodes 2\nroot 0\nbogus 1\n");
    FAIL("expected input_error");
  } catch (const input_error& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("graph text round-trips", "[hf_store]") {
  const auto g = parse_membership_graph("# two cycle\nnodes 2\nedge 0 1\nedge 1 0\nroot 1\n");
  CHECK(g.node_count == 2);
  CHECK(g.root == 1);
  const auto again = parse_membership_graph(format_membership_graph(g));
  CHECK(again.edges == g.edges);
  CHECK(again.root == g.root);
}

TEST_CASE("hyperset identities", "[hf_store]") {
  SetStore s;
  const auto o = omega(s);
  CHECK(s.singleton(o) == o);
  // Literal two-cycle a = {b}, b = {a} is bisimilar to the self-loop.
  CHECK(s.canonicalize(MembershipGraph{2, {{0, 1}, {1, 0}}, 0}) == o);
  // Distinguishable two-cycle a = {∅, b}, b = {a}.
  MembershipGraph g{3, {{0, 1}, {2, 1}, {1, 2}}, 1};
  const auto a = s.canonicalize(g);
  g.root = 2;
  const auto b = s.canonicalize(g);
  CHECK(a != b);
  CHECK(a != o);
  CHECK(std::ranges::equal(s.members(b), std::vector<SetHandle>{a}));
  // Same sets through a different presentation land on the same handles.
  MembershipGraph h{4, {{3, 0}, {1, 0}, {0, 1}, {0, 2}, {1, 2}}, 2};
  // node 2 = {a, b}
  CHECK(s.canonicalize(h) == s.make_set({a, b}));
}

TEST_CASE("canonicalization agrees with a naive bisimulation on random graphs", "[hf_store]") {
  std::mt19937_64 rng(11);
  std::bernoulli_distribution edge(0.3);
  SetStore s;
  std::vector<std::pair<MembershipGraph, SetHandle>> seen;
  for (int k = 0; k < 150; ++k) {
    MembershipGraph g;
    g.node_count = 1 + rng() % 4;
    for (std::size_t p = 0; p < g.node_count; ++p)
      for (std::size_t m = 0; m < g.node_count; ++m)
        if (edge(rng)) g.edges.emplace_back(m, p);
    g.root = rng() % g.node_count;
    seen.emplace_back(g, s.canonicalize(g));
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (std::size_t j = i; j < seen.size(); ++j)
      REQUIRE((seen[i].second == seen[j].second) == oracle::bisimilar(seen[i].first, seen[j].first));
}

TEST_CASE("store stays a quotient and children are canonically sorted", "[hf_store]") {
  SetStore s;
  rank_universe(s, 4);
  omega(s);
  s.canonicalize(MembershipGraph{3, {{0, 1}, {2, 1}, {1, 2}}, 1});
  const auto all = s.all();
  for (auto x : all) {
    const auto ms = s.members(x);
    for (std::size_t i = 1; i < ms.size(); ++i) CHECK(s.less(ms[i - 1], ms[i]));
  }
}

TEST_CASE("canonical order on grounded sets is the Ackermann order", "[hf_store]") {
  SetStore s;
  const auto v = rank_universe(s, 4);
  REQUIRE(v.size() == 16);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(oracle::ackermann(s, v[i]) == i);
}

TEST_CASE("transitive closure", "[hf_store]") {
  SetStore s;
  const auto e = s.empty();
  CHECK(s.transitive_closure(e) == std::vector<SetHandle>{e});
  const auto x = s.singleton(s.singleton(e));
  CHECK(s.transitive_closure(x).size() == 3);
  const auto o = omega(s);
  CHECK(s.transitive_closure(o) == std::vector<SetHandle>{o});
}

TEST_CASE("classify", "[hf_store]") {
  SetStore s;
  const auto c0 = s.classify(s.empty(), 4);
  CHECK(c0.grounded);
  CHECK(c0.rank == 0u);
  CHECK(c0.n_cycles.empty());
  const auto co = s.classify(omega(s), 4);
  CHECK(!co.grounded);
  CHECK(!co.rank);
  CHECK(co.n_cycles == std::vector<std::size_t>{1, 2, 3, 4});
  MembershipGraph g{3, {{0, 1}, {2, 1}, {1, 2}}, 1};
  const auto ca = s.classify(s.canonicalize(g), 6);
  CHECK(ca.n_cycles == oracle::cycle_lengths(g, 6));
  CHECK(ca.n_cycles == std::vector<std::size_t>{2, 4, 6});
}

TEST_CASE("isomorphism", "[hf_store]") {
  SetStore s;
  const auto e = s.empty();
  const auto x = s.singleton(e);
  CHECK(s.is_isomorphic(x, x));
  CHECK(!s.is_isomorphic(x, s.singleton(x)));
  const auto o1 = omega(s);
  const auto o2 = s.canonicalize(MembershipGraph{2, {{0, 1}, {1, 0}}, 1});
  CHECK(s.is_isomorphic(o1, o2));
  // {∅} ∈ NI: not isomorphic to its only member ∅.
  CHECK(!s.is_isomorphic(x, e));
}

TEST_CASE("choice sets", "[hf_store]") {
  SetStore s;
  const auto e = s.empty();
  const auto one = s.singleton(e);
  CHECK(s.choice_set(e) == e);
  CHECK(s.choice_set(s.make_set({one, s.singleton(one)})) == s.make_set({e, one}));
  CHECK(s.choice_set(s.singleton(s.make_set({e, one}))) == one);
  CHECK_THROWS_AS(s.choice_set(s.singleton(e)), precondition_error);
  CHECK_THROWS_AS(s.choice_set(s.make_set({one, s.make_set({e, one})})), precondition_error);
}

TEST_CASE("rank universe sizes and ordinals", "[hf_store]") {
  SetStore s;
  CHECK(rank_universe(s, 0).empty());
  CHECK(rank_universe(s, 1).size() == 1);
  CHECK(rank_universe(s, 2).size() == 2);
  CHECK(rank_universe(s, 3).size() == 4);
  CHECK(rank_universe(s, 4).size() == 16);
  CHECK(is_ordinal(s, von_neumann(s, 3)));
  CHECK(!is_ordinal(s, s.singleton(s.singleton(s.empty()))));
  CHECK(*s.rank(von_neumann(s, 4)) == 4);
}
