#include <catch_amalgamated.hpp>

#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run lab(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = paradox::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(PARADOX_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("check principle passes", "[cli]") {
  const auto r = lab({"check", "principle", "--max-universe", "2", "--formula-depth", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("CHECK principle PASS") != std::string::npos);
}

TEST_CASE("classify on the self-loop universe", "[cli]") {
  const auto russell = lab({"classify", "--universe", data("omega.u"), "--class", "{ x | x notin x }"});
  CHECK(russell.code == 0);
  CHECK(russell.out.find("VERDICT PARADOXICAL") != std::string::npos);
  const auto self = lab({"classify", "--universe", data("omega.u"), "--class", "{ x | x in x }"});
  CHECK(self.code == 0);
  CHECK(self.out.find("VERDICT SET a") != std::string::npos);
}

TEST_CASE("exit codes", "[cli]") {
  const auto missing = lab({"classify", "--universe", "missing.u", "--class", "{ x | x in x }"});
  CHECK(missing.code == 2);
  CHECK(missing.err.rfind("E_INPUT", 0) == 0);
  CHECK(lab({"classify", "--universe", data("omega.u"), "--class", "{ x | x in }"}).code == 2);
  CHECK(lab({}).code == 2);
  CHECK(lab({"check"}).code == 2);
  const auto big = lab({"check", "principle-formulas", "--max-universe", "7"});
  CHECK(big.code == 3);
  CHECK(big.err.rfind("E_BUDGET", 0) == 0);
  const auto mutated = lab({"check", "principle-formulas", "--max-universe", "1", "--formula-depth", "1",
                            "--mutation", "flip_not"});
  CHECK(mutated.code == 1);
  CHECK(mutated.out.find("COUNTEREXAMPLE") != std::string::npos);
  CHECK(lab({"catalog", "--which", "sikic:nothing"}).code == 2);
  CHECK(lab({"--help"}).code == 0);
}

TEST_CASE("exit 1 exactly when a FAIL or COUNTEREXAMPLE line appears", "[cli]") {
  const std::vector<std::vector<std::string>> runs{
      {"rules", "productivity", "--rules", data("two_steps.rules")},
      {"rules", "productivity", "--rules", data("constant.rules")},
      {"rules", "lfp", "--rules", data("adjoin.rules")},
      {"catalog", "--which", "inj:const:1"},
      {"catalog", "--which", "rn:2"},
      {"los", "--mode", "cardinal"}};
  for (const auto& args : runs) {
    const auto r = lab(args);
    const bool bad = r.out.find(" FAIL\n") != std::string::npos || r.out.find("COUNTEREXAMPLE") != std::string::npos;
    CHECK(r.code == (bad ? 1 : 0));
  }
}

TEST_CASE("unsafe budget marks reports bounded", "[cli]") {
  const auto r = lab({"--unsafe-budget", "check", "russell", "--class-universe", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("REPORT russell bounded") != std::string::npos);
}

TEST_CASE("seeded runs are byte-identical", "[cli]") {
  const auto a = lab({"--seed", "42", "catalog", "--which", "nwf", "--stores", "30"});
  const auto b = lab({"--seed", "42", "catalog", "--which", "nwf", "--stores", "30"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("commands from every module run", "[cli]") {
  CHECK(lab({"rules", "lfp", "--rules", data("ordinals.rules")}).code == 0);
  CHECK(lab({"rules", "validate", "--rules", data("singleton_powerset.rules")}).code == 0);
  CHECK(lab({"rules", "gfp", "--rules", data("two_steps.rules")}).code == 0);
  CHECK(lab({"hierarchy", "build", "--stages", "2", "--seed-rank", "2", "--card-budget", "4", "--axiom-report"}).code ==
        0);
  CHECK(lab({"diagonal", "--size", "3"}).code == 0);
  CHECK(lab({"los", "--mode", "zermelo", "--ground", "3"}).code == 0);
  CHECK(lab({"los", "--mode", "cumulative", "--omega-case"}).code == 0);
  CHECK(lab({"catalog", "--which", "ni"}).code == 0);
  CHECK(lab({"check", "corollary"}).code == 0);
}
