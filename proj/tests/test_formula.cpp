#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "paradox/formula.hpp"

using namespace paradox;

namespace {

Structure single(bool loop) {
  Structure m(1);
  if (loop) m.set_member(0, 0);
  return m;
}

}  // namespace

TEST_CASE("parse atoms and class terms", "[formula]") {
  const auto f = parse_formula("x notin x");
  REQUIRE(f.kind() == FormulaKind::not_);
  CHECK(f.a().kind() == FormulaKind::member);
  CHECK(to_string(f) == "x notin x");

  const auto g = parse_formula("forall s (exists x (x notin s and x in C))");
  CHECK(free_set_variables(g).empty());
  CHECK(free_class_variables(g) == std::vector<std::string>{"C"});

  const auto t = parse_class_term("{ x | x notin x }");
  CHECK(t.var == "x");
  CHECK(to_string(t) == "{ x | x notin x }");
  CHECK(std::holds_alternative<ClassTerm>(parse("{ y | y = y }")));
  CHECK(std::holds_alternative<Formula>(parse("x in y")));
}

TEST_CASE("precedence and associativity", "[formula]") {
  CHECK(parse_formula("a in b and b in c or c in a") ==
        fm::or_(fm::and_(fm::in("a", "b"), fm::in("b", "c")), fm::in("c", "a")));
  CHECK(parse_formula("a in a -> b in b -> c in c") ==
        fm::implies(fm::in("a", "a"), fm::implies(fm::in("b", "b"), fm::in("c", "c"))));
  CHECK(parse_formula("a in a <-> b in b <-> c in c") ==
        fm::iff(fm::iff(fm::in("a", "a"), fm::in("b", "b")), fm::in("c", "c")));
  CHECK(parse_formula("not a in a and b in b") == fm::and_(fm::not_(fm::in("a", "a")), fm::in("b", "b")));
  const auto f = parse_formula("exists y (y in x) and x = x");
  CHECK(parse_formula(to_string(f)) == f);
}

TEST_CASE("parse errors carry positions", "[formula]") {
  CHECK_THROWS_AS(parse_formula("x in"), parse_error);
  CHECK_THROWS_AS(parse_formula("x in y)"), parse_error);
  CHECK_THROWS_AS(parse_formula("C in x"), parse_error);
  CHECK_THROWS_AS(parse_formula("x $ y"), parse_error);
  try {
    parse_formula("x in y and");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.position() == 10);
  }
  CHECK_THROWS_AS(parse_class_term("{ x | x in y }"), input_error);
}

TEST_CASE("evaluation examples", "[formula]") {
  CHECK(evaluate(single(false), parse_formula("x notin x"), Assignment{{{"x", 0}}, {}}));
  CHECK(!evaluate(single(true), parse_formula("exists s forall x (x in s <-> x notin x)"), {}));
  for (bool loop : {false, true}) CHECK(evaluate(single(loop), parse_formula("x = x"), Assignment{{{"x", 0}}, {}}));
  CHECK_THROWS_AS(evaluate(single(false), parse_formula("x in y"), Assignment{{{"x", 0}}, {}}), contract_error);
  CHECK_THROWS_AS(evaluate(single(false), parse_formula("x in C"), Assignment{{{"x", 0}}, {}}), contract_error);
  Assignment env{{{"x", 0}}, {{"C", Subset::single(0)}}};
  CHECK(evaluate(single(false), parse_formula("x in C"), env));
  CHECK(!evaluate(single(false), parse_formula("x = C"), env));
  CHECK(evaluate(single(true), parse_formula("x = C"), env));
}

TEST_CASE("class extensions", "[formula]") {
  const auto russell = parse_class_term("{ x | x notin x }");
  CHECK(class_extension(single(false), russell).extension == Subset::single(0));
  CHECK(class_extension(single(true), russell).extension.empty());
  Structure m(3);
  m.set_member(0, 1);
  CHECK(class_extension(m, parse_class_term("{ x | x = x }")).extension == m.domain());
}

TEST_CASE("enumeration counts are stable", "[formula]") {
  const auto d0 = enumerate_formulas(0);
  REQUIRE(d0.size() == 2);
  CHECK(to_string(d0[0]) == "x in x");
  CHECK(to_string(d0[1]) == "x = x");
  CHECK(enumerate_formulas(1).size() == 16);
  CHECK(enumerate_formulas(2).size() == 176);
  CHECK(enumerate_formulas(3).size() == 3076);
  CHECK_THROWS_AS(enumerate_formulas(4), budget_error);
  for (std::size_t d = 0; d <= 2; ++d) {
    const auto fs = enumerate_formulas(d);
    CHECK(std::find(fs.begin(), fs.end(), fm::eq("x", "x")) != fs.end());
    // x is the only variable that may occur free; some formulas ignore it.
    for (const auto& f : fs) {
      const auto free = free_set_variables(f);
      CHECK((free.empty() || free == std::vector<std::string>{"x"}));
    }
  }
}

TEST_CASE("compiled evaluation matches a recursive substitution evaluator", "[formula]") {
  const std::vector<Formula> fs = enumerate_formulas(2);
  const std::vector<Formula> extra{parse_formula("forall y (y in x -> x in y)"), parse_formula("x in x or exists y (y = x)"),
                             parse_formula("x in x <-> not forall y (y in x)")};
  std::uint64_t checks = 0;
  for (std::size_t n = 1; n <= 2; ++n)
    for (const auto& m : enumerate_structures(n))
      for (std::size_t x = 0; x < n; ++x) {
        for (const auto* list : {&fs, &extra})
          for (const auto& f : *list) {
            ++checks;
            REQUIRE(evaluate(m, f, Assignment{{{"x", x}}, {}}) == oracle::eval(m, f, {{"x", x}}));
          }
      }
  CHECK(checks > 0);
}

TEST_CASE("desugaring into not/and/exists preserves truth", "[formula]") {
  const std::vector<Formula> fs = enumerate_formulas(2);
  for (const auto& f : fs) {
    const auto d = desugar(f);
    REQUIRE(is_core(d));
    for (std::size_t n = 1; n <= 2; ++n)
      for (const auto& m : enumerate_structures(n))
        for (std::size_t x = 0; x < n; ++x)
          REQUIRE(evaluate(m, f, Assignment{{{"x", x}}, {}}) == evaluate(m, d, Assignment{{{"x", x}}, {}}));
  }
  CHECK(!is_core(parse_formula("x in x or x = x")));
}

TEST_CASE("each connective mutation flips its own truth table", "[formula]") {
  Structure m(2);
  m.set_member(0, 0);  // x := 0 has x in x; x := 1 has not
  struct Case {
    const char* text;
    Mutation mu;
  };
  const Case cases[] = {{"not x in x", Mutation::flip_not},        {"x in x and x = x", Mutation::flip_and},
                        {"x in x or x in x", Mutation::flip_or},    {"x in x -> x in x", Mutation::flip_implies},
                        {"x in x <-> x = x", Mutation::flip_iff},   {"exists y (y in x)", Mutation::flip_exists},
                        {"forall y (y in x)", Mutation::flip_forall}};
  for (const auto& c : cases)
    for (std::size_t x = 0; x < 2; ++x) {
      const auto f = parse_formula(c.text);
      const Assignment env{{{"x", x}}, {}};
      CHECK(evaluate(m, f, env, c.mu) != evaluate(m, f, env));
      for (auto other : all_mutations)
        if (other != c.mu) CHECK(evaluate(m, f, env, other) == evaluate(m, f, env));
    }
}

TEST_CASE("scope check reports unbound variables", "[formula]") {
  const auto f = parse_formula("x in y");
  const std::vector<std::string> ok{"x", "y"}, partial{"x"};
  CHECK_NOTHROW(require_scoped(f, ok));
  CHECK_THROWS_AS(require_scoped(f, partial), input_error);
}
