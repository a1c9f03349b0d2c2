#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "nnt/error.hpp"
#include "nnt/evaluator.hpp"
#include "nnt/generators.hpp"
#include "nnt/instance_io.hpp"
#include "nnt/reductions.hpp"
#include "nnt/solvers.hpp"
#include "nnt/sources.hpp"

using namespace nnt;

namespace {

Instance sample() {
  SubsetSumInstance ss;
  ss.items = {1, 2, 5};
  ss.target = 3;
  return subset_sum_to_dnnt(ss);
}

}  // namespace

TEST_CASE("instance serialization is a byte-stable fixed point") {
  Instance inst = sample();
  std::string once = serialize_instance(inst);
  Instance back = parse_instance(once);
  CHECK(serialize_instance(back) == once);
  // Parsing finalizes: the topology is ready to use.
  CHECK_FALSE(back.topo.order.empty());
  CHECK(back.topo.order.front() == inst.network.source);
  CHECK(back.network.edges.size() == inst.network.edges.size());
  CHECK(back.gamma == inst.gamma);
}

TEST_CASE("generated instances round-trip with provenance and source") {
  Instance inst = random_two_layer(99, 2, 2, 2, 20000);
  REQUIRE(inst.provenance.has_value());
  std::string once = serialize_instance(inst);
  Instance back = parse_instance(once);
  CHECK(serialize_instance(back) == once);
  CHECK(back.provenance->seed == 99);
  CHECK(back.provenance->recipe == inst.provenance->recipe);
}

TEST_CASE("continuous instances round-trip probes and wrapped activations") {
  Instance disc = sample();
  Instance cont = dnnt_to_cnnt(disc);
  std::string once = serialize_instance(cont);
  Instance back = parse_instance(once);
  CHECK(serialize_instance(back) == once);

  // The rebuilt probe table must behave identically: a lifted witness
  // scores the same total loss through both objects.
  SolveResult res = brute_force(disc);
  REQUIRE(res.witness.has_value());
  Assignment lifted = lift_assignment(*res.witness, disc, cont);
  CHECK(total_loss(cont, lifted) == total_loss(back, lifted));
  const auto& cp = std::get<CnntProbe>(back.loss);
  CHECK(cp.probes.size() == std::get<CnntProbe>(cont.loss).probes.size());
  CHECK(cp.wrap_exponent == std::get<CnntProbe>(cont.loss).wrap_exponent);
}

TEST_CASE("decimals survive as exact strings") {
  Instance inst = sample();
  inst.gamma = ExactDec::parse("0.25");
  inst.dataset.points[0].x[0] = ExactDec::parse("-1.05");
  std::string text = serialize_instance(inst);
  CHECK(text.find("\"0.25\"") != std::string::npos);
  CHECK(text.find("\"-1.05\"") != std::string::npos);
  Instance back = parse_instance(text);
  CHECK(back.gamma == ExactDec::parse("0.25"));
  CHECK(back.dataset.points[0].x[0] == ExactDec::parse("-1.05"));
}

TEST_CASE("witness files round-trip both weight layouts") {
  Instance inst = sample();
  SolveResult res = brute_force(inst);
  REQUIRE(res.witness.has_value());
  std::string text = serialize_assignment(*res.witness, inst);
  Assignment back = parse_assignment(text);
  CHECK(serialize_assignment(back, inst) == text);
  CHECK(back.edges.size() == res.witness->edges.size());
  for (std::size_t e = 0; e < back.edges.size(); ++e) {
    CHECK(back.edges[e].weights == res.witness->edges[e].weights);
    CHECK(back.edges[e].bias == res.witness->edges[e].bias);
  }
  // First-layer entries use a list, deeper entries a scalar key.
  CHECK(text.find("\"weights\"") != std::string::npos);
  CHECK(text.find("\"weight\"") != std::string::npos);
}

TEST_CASE("source problems round-trip by name") {
  SUBCASE("subset sum") {
    SubsetSumInstance ss;
    ss.items = {4, 4, 9};
    ss.target = 8;
    std::string text = serialize_source(ss);
    SourceProblem back = parse_source(text);
    CHECK(serialize_source(back) == text);
    CHECK(std::get<SubsetSumInstance>(back).target == 8);
  }
  SUBCASE("constraint problem stores letters by name") {
    CspInstance csp;
    csp.vertices = {"a", "b"};
    csp.alphabet = {"x", "y", "z"};
    csp.constraints.push_back({0, 1, {{0, 2}, {1, 1}}});
    std::string text = serialize_source(csp);
    CHECK(text.find("\"x\"") != std::string::npos);
    SourceProblem back = parse_source(text);
    CHECK(serialize_source(back) == text);
    const auto& c = std::get<CspInstance>(back).constraints[0];
    CHECK(c.allowed == std::vector<std::pair<std::size_t, std::size_t>>{
                           {0, 2}, {1, 1}});
  }
  SUBCASE("exact cover") {
    ExactCoverInstance ec;
    ec.universe_size = 4;
    ec.sets = {{1, 2}, {3, 4}, {1, 3}};
    ec.k = 2;
    std::string text = serialize_source(ec);
    SourceProblem back = parse_source(text);
    CHECK(serialize_source(back) == text);
    CHECK(std::get<ExactCoverInstance>(back).sets.size() == 3);
  }
  SUBCASE("program") {
    Slp p;
    p.instructions = {{'+', 0, 0}, {'*', 1, 1}, {'-', 2, 0}};
    std::string text = serialize_source(p);
    SourceProblem back = parse_source(text);
    CHECK(serialize_source(back) == text);
    CHECK(std::get<Slp>(back).instructions[1].op == '*');
  }
}

TEST_CASE("instances can embed their source problem") {
  SubsetSumInstance ss;
  ss.items = {2, 3};
  ss.target = 5;
  Instance inst = subset_sum_to_dnnt(ss);
  REQUIRE(inst.source_problem.has_value());
  Instance back = parse_instance(serialize_instance(inst));
  REQUIRE(back.source_problem.has_value());
  CHECK(std::get<SubsetSumInstance>(*back.source_problem).items ==
        std::vector<mpz_class>{2, 3});
}

TEST_CASE("parse rejects malformed instances with the io error code") {
  auto rejects = [](const std::string& text) {
    try {
      parse_instance(text);
      return false;
    } catch (const Error& e) {
      return e.code() == Errc::parse;
    }
  };
  CHECK(rejects("not json at all"));
  CHECK(rejects("[]"));
  CHECK(rejects("{}"));

  std::string good = serialize_instance(sample());
  auto j = nlohmann::ordered_json::parse(good);

  auto mutated = [&](auto&& fn) {
    auto copy = j;
    fn(copy);
    return copy.dump();
  };
  CHECK(rejects(mutated([](auto& c) { c["format_version"] = 2; })));
  CHECK(rejects(mutated([](auto& c) { c.erase("network"); })));
  CHECK(rejects(mutated([](auto& c) { c["kind"] = "fuzzy"; })));
  CHECK(rejects(mutated([](auto& c) { c["gamma"] = "1.2.3"; })));
  CHECK(rejects(mutated(
      [](auto& c) { c["activations"]["h1"] = "warp_drive"; })));
  CHECK(rejects(mutated([](auto& c) { c["loss"]["type"] = "hinge"; })));
  // A wrapped activation without the probe-carrying loss cannot be rebuilt.
  CHECK(rejects(mutated([](auto& c) {
    c["activations"]["h1"] = {{"base", "identity"}, {"routes", {0}}};
  })));
}

TEST_CASE("structurally broken instances fail validation at parse time") {
  std::string good = serialize_instance(sample());
  auto j = nlohmann::ordered_json::parse(good);
  j["network"]["edges"][0][1] = "ghost";
  try {
    parse_instance(j.dump());
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::validation);
  }
}

TEST_CASE("file helpers report unreadable paths") {
  CHECK_THROWS_AS(load_instance("/nonexistent/foo.json"), Error);
  CHECK_THROWS_AS(load_assignment("/nonexistent/foo.json"), Error);
  Instance inst = sample();
  CHECK_THROWS_AS(save_instance(inst, "/nonexistent/dir/foo.json"), Error);
}
