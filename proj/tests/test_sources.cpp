#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"
#include "nnt/error.hpp"
#include "nnt/sources.hpp"

using namespace nnt;

namespace {

SubsetSumInstance ss(std::initializer_list<long> items, long target) {
  SubsetSumInstance s;
  for (long a : items) s.items.emplace_back(a);
  s.target = target;
  return s;
}

Errc code_of_validate(const SourceProblem& src) {
  try {
    require_valid_source(src);
    return Errc::parse;  // placeholder for "did not throw"
  } catch (const Error& e) {
    return e.code();
  }
}

}  // namespace

TEST_CASE("subset-sum oracle finds witnesses and proves absence") {
  OracleResult r = oracle_decide(ss({1, 2}, 3));
  CHECK(r.decision);
  CHECK(r.witness == "1,2");

  r = oracle_decide(ss({2, 4}, 7));
  CHECK_FALSE(r.decision);
  CHECK(r.witness.empty());

  // Larger than the target from the start: only the empty sum remains.
  r = oracle_decide(ss({5, 10}, 3));
  CHECK_FALSE(r.decision);

  r = oracle_decide(ss({4, 4, 9}, 8));
  CHECK(r.decision);
  CHECK(r.witness == "1,2");
}

TEST_CASE("constraint oracle reports assignments by name") {
  CspInstance csp;
  csp.vertices = {"v1", "v2"};
  csp.alphabet = {"a1", "a2", "a3"};
  csp.constraints.push_back({0, 1, {{1, 0}}});
  OracleResult r = oracle_decide(csp);
  CHECK(r.decision);
  CHECK(r.witness == "v1=a2 v2=a1");

  csp.constraints.push_back({0, 1, {{0, 0}}});  // contradicts the first
  CHECK_FALSE(oracle_decide(csp).decision);
}

TEST_CASE("exact-cover oracle walks covers in lexicographic order") {
  ExactCoverInstance ec;
  ec.universe_size = 4;
  ec.sets = {{1, 2}, {2, 3}, {3, 4}, {1, 2, 3, 4}};
  ec.k = 2;
  OracleResult r = oracle_decide(ec);
  CHECK(r.decision);
  CHECK(r.witness == "1,3");

  ec.k = 1;
  r = oracle_decide(ec);
  CHECK(r.decision);
  CHECK(r.witness == "4");

  ec.k = 3;
  CHECK_FALSE(oracle_decide(ec).decision);
}

TEST_CASE("program oracle evaluates and thresholds at zero") {
  Slp p;
  p.instructions = {{'+', 0, 0}, {'*', 1, 1}, {'-', 2, 0}};
  std::vector<mpz_class> values = slp_eval(p, 10000);
  CHECK(values == std::vector<mpz_class>{1, 2, 4, 3});
  OracleResult r = oracle_decide(p);
  CHECK(r.decision);
  CHECK(r.witness == "3");

  p.instructions.push_back({'-', 3, 2});  // 3 - 4 < 0
  CHECK_FALSE(oracle_decide(p).decision);

  p.instructions.push_back({'-', 4, 4});  // exactly zero
  CHECK_FALSE(oracle_decide(p).decision);
}

TEST_CASE("oracles stop at their budgets") {
  SUBCASE("assignment space") {
    CspInstance csp;
    for (int i = 0; i < 12; ++i) csp.vertices.push_back("v" + std::to_string(i));
    csp.alphabet = {"a", "b", "c", "d"};
    csp.constraints.push_back({0, 1, {{0, 0}}});
    OracleOptions opts;
    opts.enum_budget = 1000;  // 4^12 candidates is far beyond this
    try {
      oracle_decide(csp, opts);
      FAIL("expected a budget error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::budget);
    }
  }
  SUBCASE("combination count") {
    ExactCoverInstance ec;
    ec.universe_size = 1;
    for (int i = 0; i < 40; ++i) ec.sets.push_back({1});
    ec.k = 20;
    OracleOptions opts;
    opts.enum_budget = 1000;
    CHECK_THROWS_AS(oracle_decide(ec, opts), Error);
  }
  SUBCASE("digit growth") {
    Slp p;  // repeated doubling reaches 2^40, which has 13 digits
    for (int i = 0; i < 40; ++i)
      p.instructions.push_back({'+', std::size_t(i), std::size_t(i)});
    OracleOptions opts;
    opts.digit_budget = 10;
    try {
      oracle_decide(p, opts);
      FAIL("expected a budget error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::budget);
    }
    opts.digit_budget = 100;
    CHECK(oracle_decide(p, opts).decision);
  }
}

TEST_CASE("source validation rejects malformed problems") {
  SUBCASE("subset sum") {
    CHECK(code_of_validate(ss({}, 3)) == Errc::validation);
    CHECK(code_of_validate(ss({1, 0}, 3)) == Errc::validation);
    CHECK(code_of_validate(ss({1, -2}, 3)) == Errc::validation);
    CHECK(code_of_validate(ss({1, 2}, 0)) == Errc::validation);
  }
  SUBCASE("constraint problem") {
    CspInstance csp;
    CHECK(code_of_validate(csp) == Errc::validation);
    csp.vertices = {"u", "u"};
    csp.alphabet = {"a"};
    CHECK(code_of_validate(csp) == Errc::validation);
    csp.vertices = {"u", "v"};
    csp.constraints.push_back({0, 5, {{0, 0}}});
    CHECK(code_of_validate(csp) == Errc::validation);
    csp.constraints[0] = {0, 1, {}};
    CHECK(code_of_validate(csp) == Errc::validation);
  }
  SUBCASE("exact cover") {
    ExactCoverInstance ec;
    CHECK(code_of_validate(ec) == Errc::validation);
    ec.universe_size = 2;
    ec.sets = {{1, 1}};
    ec.k = 1;
    CHECK(code_of_validate(ec) == Errc::validation);  // repeat inside a set
    ec.sets = {{3}};
    CHECK(code_of_validate(ec) == Errc::validation);  // out of range
    ec.sets = {{1}};
    ec.k = 2;
    CHECK(code_of_validate(ec) == Errc::validation);  // k > set count
  }
  SUBCASE("program") {
    Slp p;
    CHECK(code_of_validate(p) == Errc::validation);
    p.instructions = {{'/', 0, 0}};
    CHECK(code_of_validate(p) == Errc::validation);
    p.instructions = {{'+', 0, 1}};  // operand 1 not yet computed
    CHECK(code_of_validate(p) == Errc::validation);
  }
}

TEST_CASE("oracle options honor the environment") {
  setenv("NNT_ENUM_BUDGET", "55", 1);
  setenv("NNT_SLP_DIGIT_BUDGET", "66", 1);
  OracleOptions opts;
  CHECK(opts.enum_budget == 55);
  CHECK(opts.digit_budget == 66);
  setenv("NNT_SLP_DIGIT_BUDGET", "1x", 1);
  CHECK_THROWS_AS(OracleOptions(), Error);
  unsetenv("NNT_ENUM_BUDGET");
  unsetenv("NNT_SLP_DIGIT_BUDGET");
  OracleOptions defaults;
  CHECK(defaults.enum_budget == 2000000);
  CHECK(defaults.digit_budget == 10000);
}
