#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "paradox/limitation.hpp"
#include "paradox/productivity.hpp"

using namespace paradox;

namespace {

Structure single(bool loop) {
  Structure m(1);
  if (loop) m.set_member(0, 0);
  return m;
}

std::optional<std::size_t> naive_represented(const Structure& m, Subset c) {
  for (std::size_t e = 0; e < m.size(); ++e) {
    bool same = true;
    for (std::size_t x = 0; x < m.size(); ++x) same = same && (m.member(x, e) == c.contains(x));
    if (same) return e;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("decide on one-element universes", "[productivity]") {
  const auto plain = single(false);
  const auto v = decide(plain, Subset::single(0));
  REQUIRE(!v.is_set());
  REQUIRE(v.certificate.entries.size() == 1);
  CHECK(v.certificate.entries[0].subset_element == 0);
  CHECK(v.certificate.entries[0].witness == 0);
  CHECK(validate_verdict(plain, Subset::single(0), v));

  const auto loop = single(true);
  const auto w = decide(loop, Subset::single(0));
  CHECK(w.is_set());
  CHECK(w.representative == 0u);
  CHECK(blocks_productive_choice(loop, Subset::single(0)));

  const auto e = decide(plain, Subset{});
  CHECK(e.is_set());
  CHECK(e.representative == 0u);
}

TEST_CASE("a tampered certificate fails validation", "[productivity]") {
  const auto m = single(false);
  auto v = decide(m, Subset::single(0));
  REQUIRE(!v.is_set());
  v.certificate.entries.clear();
  CHECK(!validate_verdict(m, Subset::single(0), v));
}

TEST_CASE("formula-level principle on small sweeps", "[productivity]") {
  const auto r = verify_principle_formula_level(1, 0);
  CHECK(r.passed());
  const auto& ls = r.lines();
  CHECK(std::find(ls.begin(), ls.end(), "COUNT structures 3") != ls.end());
  CHECK(std::find(ls.begin(), ls.end(), "COUNT checks 6") != ls.end());
  CHECK(verify_principle_formula_level(2, 1).passed());
  CHECK_THROWS_AS(verify_principle_formula_level(5, 1), budget_error);
}

TEST_CASE("formula-level principle sides agree with the recursive evaluator", "[productivity]") {
  for (const auto& phi : enumerate_formulas(1)) {
    const auto lhs = principle_lhs(phi), rhs = principle_rhs(phi);
    for (std::size_t n = 0; n <= 2; ++n)
      for (const auto& m : enumerate_structures(n)) {
        const bool l = oracle::eval(m, lhs, {});
        REQUIRE(l == oracle::eval(m, rhs, {}));
        REQUIRE(l == evaluate(m, lhs, {}));
      }
  }
}

TEST_CASE("a single mutation is caught", "[productivity]") {
  CHECK(!verify_principle_formula_level(2, 1, Mutation::flip_not).passed());
  CHECK(!verify_principle_formula_level(2, 1, Mutation::flip_exists).passed());
}

TEST_CASE("class-level principle against a direct oracle", "[productivity]") {
  CHECK(verify_principle_class_level(0).passed());
  CHECK(verify_principle_class_level(3).passed());
  for (std::size_t n = 0; n <= 3; ++n)
    for_each_structure(n, [&](const Structure& m) {
      for (std::uint64_t cb = 0; cb < (std::uint64_t{1} << n); ++cb) {
        const Subset c(cb);
        const bool unrepresented = !naive_represented(m, c);
        bool productive = true;
        for (std::size_t s = 0; s < n; ++s)
          if (m.extension_of(s).subset_of(c) && m.extension_of(s) == c) productive = false;
        REQUIRE(unrepresented == productive);
        REQUIRE(decide(m, c).is_set() == !unrepresented);
      }
    });
  // a ∈ a, C = {a}: both sides false.
  const auto loop = single(true);
  CHECK(naive_represented(loop, Subset::single(0)));
}

TEST_CASE("russell and certificate sweeps", "[productivity]") {
  CHECK(russell_unrepresentability(3).passed());
  CHECK(certificate_soundness_sweep(2).passed());
}

TEST_CASE("identity-productive classes", "[productivity]") {
  // a ∉ a, b ∈ b
  Structure m(2);
  m.set_member(1, 1);
  CHECK(identity_productive(m, Subset::single(0)));
  CHECK(!identity_productive(m, Subset::single(1)));
  CHECK(identity_productive_report(m).passed());
  // a ∈ a: the empty class qualifies vacuously.
  CHECK(identity_productive(single(true), Subset{}));
  CHECK(identity_productive_sweep(2).passed());
}

TEST_CASE("limitation of size", "[productivity]") {
  SetStore s;
  const auto cum = los_check(cumulative_system(s, 3));
  CHECK(cum.passed());
  const auto card = cardinal_system(2, 3);
  CHECK(los_check(card).passed());
  for (std::uint64_t cb = 0; cb < 8; ++cb) CHECK(card.is_set(Subset(cb)) == (Subset(cb).size() < 2));
  CHECK(los_zermelo_exhaustive(3).passed());
  const auto z = zermelo_system(2, {Subset{}, Subset::single(0)});
  CHECK(los_check(z).passed());
  CHECK_THROWS_AS(los_zermelo_exhaustive(5), budget_error);
}

TEST_CASE("omega case", "[productivity]") {
  const auto r = omega_case();
  CHECK(r.passed());
  const auto& ls = r.lines();
  CHECK(std::find(ls.begin(), ls.end(), "VERDICT SET omega") != ls.end());
  CHECK(std::find(ls.begin(), ls.end(), "CLASSIFY {Omega} PARADOXICAL") != ls.end());
}
