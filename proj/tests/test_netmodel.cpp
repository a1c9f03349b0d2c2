#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "nnt/error.hpp"
#include "nnt/netmodel.hpp"

using namespace nnt;

namespace {

std::vector<ExactDec> decs(std::initializer_list<long> vals) {
  std::vector<ExactDec> out;
  for (long v : vals) out.emplace_back(v);
  return out;
}

// s feeds h1 and h2, both feed t. One input dimension, identity throughout.
Instance diamond() {
  Instance inst;
  inst.network.source = "s";
  inst.network.hidden = {"h1", "h2"};
  inst.network.outputs = {"t"};
  inst.network.edges = {{"s", "h1"}, {"s", "h2"}, {"h1", "t"}, {"h2", "t"}};
  inst.dataset.input_dim = 1;
  inst.dataset.points.push_back({decs({1}), decs({3})});
  for (const char* v : {"h1", "h2", "t"}) inst.activations[v] = Identity{};
  inst.loss = SumSquares{};
  inst.params.edges.resize(4);
  inst.params.edges[0] = {{decs({1, 2})}, decs({0})};
  inst.params.edges[1] = {{decs({1, 2})}, decs({0})};
  inst.params.edges[2] = {{decs({1})}, decs({0})};
  inst.params.edges[3] = {{decs({1})}, decs({0})};
  inst.gamma = ExactDec(0);
  return inst;
}

bool mentions(const std::vector<std::string>& report, const std::string& what) {
  return std::any_of(report.begin(), report.end(), [&](const std::string& r) {
    return r.find(what) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("a well-formed instance validates and finalizes") {
  Instance inst = diamond();
  CHECK(validate(inst).empty());
  finalize(inst);
  CHECK(inst.topo.order == std::vector<std::string>{"s", "h1", "h2", "t"});
  CHECK(inst.topo.position.at("s") == 0);
  CHECK(inst.topo.position.at("t") == 3);
  CHECK(inst.topo.in_edges.at("t") == std::vector<std::size_t>{2, 3});
  CHECK(inst.topo.in_edges.at("s").empty());
  CHECK(inst.topo.first_layer == std::vector<bool>{true, true, false, false});
  CHECK(inst.topo.depth == 2);
  CHECK(inst.topo.width == 2);
}

TEST_CASE("source is popped first, then lexicographic order") {
  Instance inst = diamond();
  // Rename the source so it would sort last; it must still lead the order.
  inst.network.source = "zzz";
  inst.network.edges = {{"zzz", "h1"}, {"zzz", "h2"}, {"h1", "t"}, {"h2", "t"}};
  finalize(inst);
  CHECK(inst.topo.order.front() == "zzz");
  CHECK(inst.topo.order == std::vector<std::string>{"zzz", "h1", "h2", "t"});
}

TEST_CASE("validation reports structural defects") {
  SUBCASE("duplicate vertex id") {
    Instance inst = diamond();
    inst.network.hidden.push_back("t");
    CHECK(mentions(validate(inst), "duplicate vertex id 't'"));
  }
  SUBCASE("unknown edge endpoint") {
    Instance inst = diamond();
    inst.network.edges[1].to = "ghost";
    CHECK(mentions(validate(inst), "references unknown vertex"));
  }
  SUBCASE("edge into the source") {
    Instance inst = diamond();
    inst.network.edges[2].to = "s";
    CHECK(mentions(validate(inst), "points into the source"));
  }
  SUBCASE("cycle") {
    Instance inst = diamond();
    inst.network.edges.push_back({"t", "h1"});
    inst.params.edges.push_back({{decs({1})}, decs({0})});
    CHECK(mentions(validate(inst), "acyclicity violated"));
  }
  SUBCASE("unreachable output") {
    Instance inst = diamond();
    inst.network.outputs.push_back("t2");
    inst.activations["t2"] = Identity{};
    inst.dataset.points[0].y.push_back(ExactDec(0));
    CHECK(mentions(validate(inst), "output 't2' unreachable from source"));
  }
  SUBCASE("no outputs at all") {
    Instance inst = diamond();
    inst.network.outputs.clear();
    CHECK(mentions(validate(inst), "no output vertex"));
  }
}

TEST_CASE("validation ties activations to non-source vertices") {
  SUBCASE("missing") {
    Instance inst = diamond();
    inst.activations.erase("h2");
    CHECK(mentions(validate(inst), "vertex 'h2' has no activation"));
  }
  SUBCASE("unknown vertex") {
    Instance inst = diamond();
    inst.activations["ghost"] = Relu{};
    CHECK(mentions(validate(inst), "activation for unknown vertex 'ghost'"));
  }
  SUBCASE("on the source") {
    Instance inst = diamond();
    inst.activations["s"] = Identity{};
    CHECK(mentions(validate(inst), "source vertex must not carry"));
  }
}

TEST_CASE("validation checks dataset shapes") {
  SUBCASE("empty dataset") {
    Instance inst = diamond();
    inst.dataset.points.clear();
    CHECK(mentions(validate(inst), "dataset is empty"));
  }
  SUBCASE("wrong x arity") {
    Instance inst = diamond();
    inst.dataset.points[0].x.push_back(ExactDec(9));
    CHECK(mentions(validate(inst), "has |x| = 2, expected 1"));
  }
  SUBCASE("wrong y arity") {
    Instance inst = diamond();
    inst.dataset.points[0].y.clear();
    CHECK(mentions(validate(inst), "has |y| = 0, expected 1"));
  }
}

TEST_CASE("validation checks the parameter space") {
  SUBCASE("edge count mismatch") {
    Instance inst = diamond();
    inst.params.edges.pop_back();
    CHECK(mentions(validate(inst), "parameter space covers 3 edges"));
  }
  SUBCASE("first-layer edges need one set per input dimension") {
    Instance inst = diamond();
    inst.dataset.input_dim = 2;
    inst.dataset.points[0].x.push_back(ExactDec(0));
    CHECK(mentions(validate(inst), "edge 0 needs 2 weight set(s), has 1"));
  }
  SUBCASE("empty weight set") {
    Instance inst = diamond();
    inst.params.edges[2].weight_sets[0].clear();
    CHECK(mentions(validate(inst), "empty weight set on edge 2"));
  }
  SUBCASE("empty bias set") {
    Instance inst = diamond();
    inst.params.edges[3].bias_set.clear();
    CHECK(mentions(validate(inst), "empty bias set on edge 3"));
  }
  SUBCASE("kind marker must match the space") {
    Instance inst = diamond();
    inst.kind = Kind::continuous;
    CHECK(mentions(validate(inst), "kind and parameter-space marker disagree"));
  }
}

TEST_CASE("validation checks decode-loss payloads") {
  Instance inst = diamond();
  CspDecode d;
  d.alphabet_size = 3;
  d.allowed.resize(1);
  d.allowed[0].insert({1, 3});
  inst.loss = d;
  CHECK(validate(inst).empty());

  SUBCASE("empty alphabet") {
    std::get<CspDecode>(inst.loss).alphabet_size = 0;
    CHECK(mentions(validate(inst), "empty alphabet"));
  }
  SUBCASE("output arity mismatch") {
    std::get<CspDecode>(inst.loss).allowed.emplace_back();
    CHECK(mentions(validate(inst), "decode loss covers 2 outputs"));
  }
  SUBCASE("pair out of range") {
    std::get<CspDecode>(inst.loss).allowed[0].insert({4, 1});
    CHECK(mentions(validate(inst), "decode pair out of alphabet range"));
  }
}

TEST_CASE("finalize throws a joined validation report") {
  Instance inst = diamond();
  inst.network.edges[0].to = "ghost";
  inst.dataset.points.clear();
  try {
    finalize(inst);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::validation);
    CHECK(std::string(e.what()).find("invalid instance:") != std::string::npos);
    CHECK(std::string(e.what()).find("unknown vertex") != std::string::npos);
    CHECK(std::string(e.what()).find("dataset is empty") != std::string::npos);
  }
}

TEST_CASE("parallel edges are kept apart by index") {
  Instance inst = diamond();
  inst.network.edges.push_back({"h1", "t"});  // duplicate of edge 2
  inst.params.edges.push_back({{decs({5})}, decs({0})});
  finalize(inst);
  CHECK(inst.topo.in_edges.at("t") == std::vector<std::size_t>{2, 3, 4});
}

TEST_CASE("membership checks values against the per-edge sets") {
  Instance inst = diamond();
  finalize(inst);
  Assignment theta;
  theta.edges.resize(4);
  theta.edges[0] = {decs({2}), ExactDec(0)};
  theta.edges[1] = {decs({1}), ExactDec(0)};
  theta.edges[2] = {decs({1}), ExactDec(0)};
  theta.edges[3] = {decs({1}), ExactDec(0)};
  CHECK(membership(theta, inst));

  SUBCASE("weight outside its set") {
    theta.edges[0].weights[0] = ExactDec(3);
    CHECK_FALSE(membership(theta, inst));
  }
  SUBCASE("bias outside its set") {
    theta.edges[2].bias = ExactDec(1);
    CHECK_FALSE(membership(theta, inst));
  }
  SUBCASE("shape mismatch throws") {
    theta.edges.pop_back();
    CHECK_THROWS_AS(membership(theta, inst), Error);
  }
  SUBCASE("wrong weight arity throws") {
    theta.edges[0].weights.push_back(ExactDec(1));
    CHECK_THROWS_AS(membership(theta, inst), Error);
  }
}

TEST_CASE("continuous instances only check shapes") {
  Instance inst = diamond();
  inst.kind = Kind::continuous;
  inst.params.continuous = true;
  inst.params.edges.clear();
  finalize(inst);
  Assignment theta;
  theta.edges.resize(4);
  theta.edges[0] = {{ExactDec::parse("0.125")}, ExactDec::parse("-7.5")};
  theta.edges[1] = {{ExactDec(1000)}, ExactDec(0)};
  theta.edges[2] = {{ExactDec(1)}, ExactDec(0)};
  theta.edges[3] = {{ExactDec(1)}, ExactDec(0)};
  CHECK(membership(theta, inst));
  theta.edges.pop_back();
  CHECK_THROWS_AS(membership(theta, inst), Error);
}
