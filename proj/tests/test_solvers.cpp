#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <string>
#include <vector>

#include "doctest.h"
#include "nnt/error.hpp"
#include "nnt/evaluator.hpp"
#include "nnt/generators.hpp"
#include "nnt/instance_io.hpp"
#include "nnt/reductions.hpp"
#include "nnt/solvers.hpp"
#include "nnt/sources.hpp"

using namespace nnt;

namespace {

std::vector<ExactDec> decs(std::initializer_list<const char*> vals) {
  std::vector<ExactDec> out;
  for (const char* v : vals) out.push_back(ExactDec::parse(v));
  return out;
}

Instance subset_sum(std::initializer_list<long> items, long target) {
  SubsetSumInstance ss;
  for (long a : items) ss.items.emplace_back(a);
  ss.target = target;
  return subset_sum_to_dnnt(ss);
}

// s -> h -> t with one weight set on each edge and zero biases.
Instance chain(std::vector<ExactDec> w1, std::vector<ExactDec> w2,
               const char* x, const char* y, const char* gamma,
               Activation h_act = Identity{}) {
  Instance inst;
  inst.network.source = "s";
  inst.network.hidden = {"h"};
  inst.network.outputs = {"t"};
  inst.network.edges = {{"s", "h"}, {"h", "t"}};
  inst.dataset.input_dim = 1;
  inst.dataset.points.push_back({decs({x}), decs({y})});
  inst.activations["h"] = h_act;
  inst.activations["t"] = Identity{};
  inst.loss = SumSquares{};
  inst.params.edges.push_back({{std::move(w1)}, decs({"0"})});
  inst.params.edges.push_back({{std::move(w2)}, decs({"0"})});
  inst.gamma = ExactDec::parse(gamma);
  finalize(inst);
  return inst;
}

bool same_result(const SolveResult& a, const SolveResult& b,
                 const Instance& inst) {
  return a.decision == b.decision && a.loss == b.loss &&
         serialize_assignment(*a.witness, inst) ==
             serialize_assignment(*b.witness, inst);
}

}  // namespace

TEST_CASE("exhaustive search pins the minimum loss") {
  // Items 2 and 4 cannot hit 7; the best sum is 6 with squared error 1.
  Instance inst = subset_sum({2, 4}, 7);
  SolveResult res = brute_force(inst);
  CHECK(res.stats.candidates == 4);
  CHECK(res.loss == ExactDec(1));
  CHECK_FALSE(res.decision);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->edges[0].weights[0] == ExactDec(2));
  CHECK(res.witness->edges[1].weights[0] == ExactDec(4));
  CHECK(total_loss(inst, *res.witness) == res.loss);
}

TEST_CASE("exhaustive search finds an exact witness when one exists") {
  Instance inst = subset_sum({1, 2}, 3);
  SolveResult res = brute_force(inst);
  CHECK(res.decision);
  CHECK(res.loss == ExactDec(0));
  CHECK(res.witness->edges[0].weights[0] == ExactDec(1));
  CHECK(res.witness->edges[1].weights[0] == ExactDec(2));
}

TEST_CASE("ties break toward the smallest enumeration index") {
  // Both weights miss the target equally; the first set element wins.
  Instance one = chain(decs({"1", "-1"}), decs({"1"}), "1", "0", "0");
  SolveResult res = brute_force(one);
  CHECK(res.loss == ExactDec(1));
  CHECK(res.witness->edges[0].weights[0] == ExactDec(1));

  // Two parallel first-layer edges: the earlier edge's digit is more
  // significant, so among the tied sums 0+1 and 1+0 the first wins.
  Instance two;
  two.network.source = "s";
  two.network.outputs = {"t"};
  two.network.edges = {{"s", "t"}, {"s", "t"}};
  two.dataset.input_dim = 1;
  two.dataset.points.push_back({decs({"1"}), decs({"1"})});
  two.activations["t"] = Identity{};
  two.loss = SumSquares{};
  two.params.edges.push_back({{decs({"0", "1"})}, decs({"0"})});
  two.params.edges.push_back({{decs({"0", "1"})}, decs({"0"})});
  two.gamma = ExactDec(0);
  finalize(two);
  SolveResult r2 = brute_force(two);
  CHECK(r2.decision);
  CHECK(r2.witness->edges[0].weights[0] == ExactDec(0));
  CHECK(r2.witness->edges[1].weights[0] == ExactDec(1));
}

TEST_CASE("serial and parallel searches agree everywhere") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Instance inst = random_two_layer(seed, 1 + seed % 3, 1 + seed % 2,
                                     1 + seed % 3, 5000);
    SolveResult par = brute_force(inst);
    SolveResult ser = brute_force_serial(inst);
    CHECK(same_result(par, ser, inst));
    SolveOptions opt_serial;
    opt_serial.serial = true;
    CHECK(same_result(brute_force(inst, opt_serial), ser, inst));
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SubsetSumInstance ss = random_subset_sum(seed, 6, 30);
    Instance inst = subset_sum_to_dnnt(ss);
    CHECK(same_result(brute_force(inst), brute_force_serial(inst), inst));
  }
}

TEST_CASE("the candidate budget is enforced exactly") {
  Instance inst = subset_sum({2, 4}, 7);  // 4 candidates
  SolveOptions at;
  at.budget = 4;
  CHECK(brute_force(inst, at).stats.candidates == 4);
  SolveOptions under;
  under.budget = 3;
  try {
    brute_force(inst, under);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget);
    CHECK(std::string(e.what()).find("4 candidates") != std::string::npos);
  }
}

TEST_CASE("budget options honor the environment variable") {
  setenv("NNT_ENUM_BUDGET", "123", 1);
  CHECK(SolveOptions().budget == 123);
  setenv("NNT_ENUM_BUDGET", "garbage", 1);
  CHECK_THROWS_AS(SolveOptions(), Error);
  unsetenv("NNT_ENUM_BUDGET");
  CHECK(SolveOptions().budget == 2000000);
}

TEST_CASE("evaluation failures surface identically from both paths") {
  // Weight 0.5 feeds a digit-shift vertex a non-integer; the search must
  // report that candidate's failure no matter the schedule.
  Instance inst = chain(decs({"0.5", "1"}), decs({"1"}), "1", "0", "0",
                        DecShift{});
  std::string serial_msg, parallel_msg;
  try {
    brute_force_serial(inst);
    FAIL("expected an evaluation error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::evaluation);
    serial_msg = e.what();
  }
  try {
    brute_force(inst);
    FAIL("expected an evaluation error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::evaluation);
    parallel_msg = e.what();
  }
  CHECK(serial_msg == parallel_msg);
}

TEST_CASE("search refuses continuous instances") {
  Instance disc = subset_sum({1, 2}, 3);
  Instance cont = dnnt_to_cnnt(disc);
  CHECK_THROWS_AS(brute_force(cont), Error);
}

TEST_CASE("value bound, pinned worked example") {
  // Items {1, 2} with target 3: every reachable value fits in [-9, 9],
  // and the per-entry cap is d * W_max * k = 1 * 9 * 2.
  ValueBound b = compute_bound(subset_sum({1, 2}, 3));
  CHECK(b.w_max == 9);
  CHECK(b.bound_m == 18);
}

TEST_CASE("dynamic program, pinned micro instance") {
  // One unit, weight set {1, 2}, data point x = 2, y = 4. The per-unit
  // table reaches the vectors (2) and (4) at both levels, and only
  // weight 2 fits exactly.
  Instance inst = chain(decs({"1", "2"}), decs({"1"}), "2", "4", "0");
  SolveResult res = dp_solve(inst);
  CHECK(res.decision);
  CHECK(res.loss == ExactDec(0));
  CHECK(res.witness->edges[0].weights[0] == ExactDec(2));
  CHECK(res.stats.dim_entries == 4);    // {2,4} after the weight, {2,4} + bias
  CHECK(res.stats.final_entries == 3);  // zero seed plus {2,4}
  CHECK(total_loss(inst, *res.witness) == res.loss);
}

TEST_CASE("dynamic program agrees with exhaustive search on random corpora") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Instance inst = random_two_layer(seed, 1 + seed % 3, 1 + seed % 3,
                                     1 + seed % 2, 3000);
    SolveResult bs = brute_force(inst);
    SolveResult dp = dp_solve(inst);
    CHECK(dp.decision == bs.decision);
    CHECK(dp.loss == bs.loss);
    REQUIRE(dp.witness.has_value());
    CHECK(membership(*dp.witness, inst));
    CHECK(total_loss(inst, *dp.witness) == dp.loss);
  }
}

TEST_CASE("dynamic program refuses shapes it cannot handle") {
  auto code_of = [](const Instance& inst) {
    try {
      dp_solve(inst);
      return Errc::parse;  // anything but precondition
    } catch (const Error& e) {
      return e.code();
    }
  };

  SUBCASE("direct source-to-output edge") {
    Instance inst = subset_sum({1, 2}, 3);
    inst.network.edges.push_back({"s", "t"});
    inst.params.edges.push_back({{decs({"1"})}, decs({"0"})});
    finalize(inst);
    CHECK(code_of(inst) == Errc::precondition);
  }
  SUBCASE("negative weights are not naturals") {
    CHECK(code_of(chain(decs({"-1", "1"}), decs({"1"}), "1", "0", "0")) ==
          Errc::precondition);
  }
  SUBCASE("fractional data is not natural") {
    CHECK(code_of(chain(decs({"1"}), decs({"1"}), "0.5", "0", "0")) ==
          Errc::precondition);
  }
  SUBCASE("digit-shift hidden units are out of scope") {
    CHECK(code_of(chain(decs({"1"}), decs({"1"}), "1", "0", "0",
                        DecShift{})) == Errc::precondition);
  }
  SUBCASE("deep networks are out of scope") {
    Instance inst;
    inst.network.source = "s";
    inst.network.hidden = {"h1", "h2"};
    inst.network.outputs = {"t"};
    inst.network.edges = {{"s", "h1"}, {"h1", "h2"}, {"h2", "t"}};
    inst.dataset.input_dim = 1;
    inst.dataset.points.push_back({decs({"1"}), decs({"0"})});
    for (const char* v : {"h1", "h2", "t"}) inst.activations[v] = Identity{};
    inst.loss = SumSquares{};
    for (int i = 0; i < 3; ++i)
      inst.params.edges.push_back({{decs({"1"})}, decs({"0"})});
    inst.gamma = ExactDec(0);
    finalize(inst);
    CHECK(code_of(inst) == Errc::precondition);
  }
}

TEST_CASE("dynamic program honors the entry budget") {
  Instance inst = random_two_layer(5, 2, 2, 2, 5000);
  SolveOptions tiny;
  tiny.budget = 2;
  try {
    dp_solve(inst, tiny);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget);
  }
}

TEST_CASE("rescaling to naturals preserves the decision") {
  Instance inst = chain(decs({"0.5", "1"}), decs({"1", "2"}), "1.5", "2.25",
                        "0.01");
  std::uint32_t p = 0, q = 0, r = 0;
  Instance scaled = scale_to_naturals(inst, p, q, r);
  CHECK(p + q + r > 0);

  // Everything in the scaled instance is a natural number.
  for (const auto& sp : scaled.params.edges) {
    for (const auto& ws : sp.weight_sets)
      for (const auto& w : ws) {
        CHECK(w.is_integer());
        CHECK_FALSE(w.is_negative());
      }
    for (const auto& b : sp.bias_set) CHECK(b.is_integer());
  }
  for (const auto& pt : scaled.dataset.points) {
    for (const auto& v : pt.x) CHECK(v.is_integer());
    for (const auto& v : pt.y) CHECK(v.is_integer());
  }

  SolveResult orig_res = brute_force(inst);
  SolveResult scaled_brute = brute_force(scaled);
  SolveResult scaled_dp = dp_solve(scaled);
  CHECK(scaled_brute.decision == orig_res.decision);
  CHECK(scaled_dp.decision == orig_res.decision);

  // Witnesses map back onto the original parameter space.
  Assignment back = unscale_assignment(*scaled_dp.witness, inst, p, q, r);
  CHECK(membership(back, inst));
  CHECK((total_loss(inst, back) <= inst.gamma) == orig_res.decision);
}

TEST_CASE("rescaling an all-natural instance is the identity") {
  Instance inst = subset_sum({1, 2}, 3);
  std::uint32_t p = 9, q = 9, r = 9;
  Instance scaled = scale_to_naturals(inst, p, q, r);
  CHECK(p == 0);
  CHECK(q == 0);
  CHECK(r == 0);
  CHECK(serialize_instance(scaled) == serialize_instance(inst));
}

TEST_CASE("rescaling refuses what it cannot keep exact") {
  // A digit-product unit reacts to the decimal encoding itself, so
  // shifting scales would change the function being trained.
  Instance inst = chain(decs({"0.5"}), decs({"1"}), "1", "0", "0", SlpMul{});
  CHECK_THROWS_AS(scale_to_naturals(inst), Error);

  Instance neg = chain(decs({"1"}), decs({"1"}), "-0.5", "0", "0");
  CHECK_THROWS_AS(scale_to_naturals(neg), Error);
}
