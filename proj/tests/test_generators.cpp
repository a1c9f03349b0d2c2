#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "nnt/error.hpp"
#include "nnt/generators.hpp"
#include "nnt/instance_io.hpp"
#include "nnt/solvers.hpp"
#include "nnt/sources.hpp"

using namespace nnt;

TEST_CASE("generation is deterministic per seed") {
  for (std::uint64_t seed : {1ull, 17ull, 4242ull}) {
    CHECK(serialize_source(random_subset_sum(seed, 7, 30)) ==
          serialize_source(random_subset_sum(seed, 7, 30)));
    CHECK(serialize_source(random_csp(seed, 3, 3, 4)) ==
          serialize_source(random_csp(seed, 3, 3, 4)));
    CHECK(serialize_source(random_exact_cover(seed, 5, 4, 2)) ==
          serialize_source(random_exact_cover(seed, 5, 4, 2)));
    CHECK(serialize_source(random_slp(seed, 9, 10000)) ==
          serialize_source(random_slp(seed, 9, 10000)));
    CHECK(serialize_instance(random_two_layer(seed, 2, 2, 2, 10000)) ==
          serialize_instance(random_two_layer(seed, 2, 2, 2, 10000)));
  }
  CHECK(serialize_source(random_subset_sum(1, 7, 30)) !=
        serialize_source(random_subset_sum(2, 7, 30)));
}

TEST_CASE("generated sources are always valid") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    require_valid_source(random_subset_sum(seed, 1 + seed % 10, 40));
    require_valid_source(random_csp(seed, 2 + seed % 3, 1 + seed % 4,
                                    1 + seed % 5));
    std::size_t universe = 2 + seed % 5;
    require_valid_source(
        random_exact_cover(seed, universe, 2 + seed % 5, 1 + seed % 2));
    require_valid_source(random_slp(seed, 2 + seed % 14, 10000));
  }
}

TEST_CASE("generated corpora exercise both answers") {
  int yes = 0, no = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    OracleResult r = oracle_decide(random_subset_sum(seed, 6, 30));
    (r.decision ? yes : no) += 1;
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("constraint generators join distinct vertices") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    CspInstance csp = random_csp(seed, 2 + seed % 4, 3, 5);
    for (const auto& c : csp.constraints) CHECK(c.u != c.v);
  }
  CHECK_THROWS_AS(random_csp(1, 1, 3, 5), Error);
}

TEST_CASE("program generators keep digit products on their domain") {
  int muls = 0, adds = 0, subs = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Slp p = random_slp(seed, 10, 10000);
    std::vector<mpz_class> values = slp_eval(p, 10000);
    for (const auto& ins : p.instructions) {
      if (ins.op == '*') {
        ++muls;
        // The digit-packing gadget needs right operands that end in a
        // nonzero digit (or are zero outright).
        const mpz_class& rhs = values[ins.k];
        CHECK((rhs == 0 || rhs % 10 != 0));
      } else if (ins.op == '+') {
        ++adds;
      } else {
        ++subs;
      }
    }
  }
  CHECK(muls > 0);
  CHECK(adds > 0);
  CHECK(subs > 0);
}

TEST_CASE("two-layer instances fit the dynamic-programming shape") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    std::size_t d = 1 + seed % 3, k = 1 + seed % 3, pts = 1 + seed % 2;
    Instance inst = random_two_layer(seed, d, k, pts, 4000);
    CHECK_FALSE(inst.topo.order.empty());
    CHECK(inst.network.hidden.size() == k);
    CHECK(inst.network.outputs.size() == 1);
    CHECK(inst.dataset.input_dim == d);
    CHECK(inst.dataset.points.size() == pts);
    REQUIRE(inst.provenance.has_value());
    CHECK(inst.provenance->seed == seed);
    for (const auto& sp : inst.params.edges)
      for (const auto& ws : sp.weight_sets)
        for (const auto& w : ws) {
          CHECK(w.is_integer());
          CHECK_FALSE(w.is_negative());
        }
    // The slot cap bounds the candidate space, so this cannot overrun.
    SolveOptions opts;
    opts.budget = 4000;
    SolveResult res = brute_force(inst, opts);
    CHECK(res.stats.candidates <= 4000);
  }
}

TEST_CASE("exact-cover generation needs room for a planted cover") {
  CHECK_THROWS_AS(random_exact_cover(1, 2, 5, 3), Error);  // k > universe
  CHECK_THROWS_AS(random_exact_cover(1, 5, 2, 3), Error);  // k > sets
}
