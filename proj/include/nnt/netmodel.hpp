#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "nnt/exactdec.hpp"
#include "nnt/sources.hpp"

namespace nnt {

struct Edge {
  std::string from, to;
};

/* DAG with one source, hidden vertices and an ordered output list. Parallel
 * edges are allowed (and required: doubling an SLP value uses two identical
 * edges), so parameters are keyed by edge index, never by endpoint pair. */
struct Network {
  std::string source;
  std::vector<std::string> hidden;
  std::vector<std::string> outputs;
  std::vector<Edge> edges;
};

struct DataPoint {
  std::vector<ExactDec> x;  // length d
  std::vector<ExactDec> y;  // length |outputs| (per-output dimension is 1)
};

struct Dataset {
  std::size_t input_dim = 0;  // d
  std::vector<DataPoint> points;
};

struct Identity {};
struct Relu {};
struct SlpMul {};    // digit-packing product activation (see exactdec.hpp)
struct DecShift {};  // integer -> 0.digits shift

enum class BaseActivation { identity, relu, slp_mul, dec_shift };

/* One row per probe point of a continuous instance. F(e,i) is the symmetric
 * magnitude band [low, high] union [-high, -low] with low = f, high = mult*f;
 * rows are sorted by f and pairwise disjoint. */
struct ProbeInterval {
  std::size_t edge = 0;  // edge index this band isolates
  std::size_t dim = 0;   // 1-based dimension (d+1 addresses the bias slot)
  ExactDec f;
  ExactDec low, high;
};

struct ProbeTable {
  std::uint32_t wrap_exponent = 0;  // magnitudes >= 10^wrap_exponent wrap
  ExactDec threshold;               // 10^wrap_exponent
  mpz_class multiplier;             // band width factor (high = multiplier * f)
  std::vector<ProbeInterval> intervals;  // sorted by f ascending
};

/* Probe-aware activation: below the threshold it is the base activation;
 * inside a band it passes the value through on routing vertices and zeroes
 * it elsewhere; large values in no band pass through unchanged. */
struct Wrapped {
  BaseActivation base = BaseActivation::identity;
  std::shared_ptr<const ProbeTable> table;
  std::set<std::size_t> on_path_edges;  // edges routed through this vertex
};

using Activation = std::variant<Identity, Relu, SlpMul, DecShift, Wrapped>;

struct SumSquares {};

// 0 if output = 1 = target, else 1 if output > 0, else 2.
struct SlpThreshold {};

// Each output value packs two symbol numbers as l + 2n*m; scores 1 when every
// output decodes into its allowed pair set, else 2.
struct CspDecode {
  std::size_t alphabet_size = 0;  // n
  // Parallel to network.outputs: allowed (l, m) pairs, values in 1..n.
  std::vector<std::set<std::pair<long, long>>> allowed;
};

struct Probe {
  std::size_t edge = 0;
  std::size_t dim = 0;  // 1-based; d+1 is the bias slot
  ExactDec f;
  std::vector<std::string> path;      // routing path, source..tail inclusive
  std::vector<std::string> upstream;  // head feeders that must read zero
  std::vector<ExactDec> allowed;      // sorted; head must output f * (one of these)
};

using BaseLoss = std::variant<SumSquares, SlpThreshold, CspDecode>;

/* Loss of an emitted continuous instance. The first original_count data
 * points score through `base` on the original output vertices; each later
 * point i is governed by probes[i - original_count] and scores 1 when the
 * probe's path/upstream/head conditions all hold, else `penalty`. */
struct CnntProbe {
  BaseLoss base;
  std::vector<std::string> original_outputs;
  std::size_t original_count = 0;
  ExactDec penalty;
  // Probe magnitudes start at 10^wrap_exponent and each band stretches by a
  // factor of wrap_exponent; wrapped activations share the derived table.
  std::uint32_t wrap_exponent = 0;
  std::vector<Probe> probes;
};

using Loss = std::variant<SumSquares, SlpThreshold, CspDecode, CnntProbe>;

struct EdgeSpace {
  // First-layer edges carry one sorted set per input dimension; all other
  // edges carry exactly one set. Sets are sorted ascending and non-empty.
  std::vector<std::vector<ExactDec>> weight_sets;
  std::vector<ExactDec> bias_set;
};

struct ParamSpace {
  bool continuous = false;        // every weight/bias ranges over all reals
  std::vector<EdgeSpace> edges;   // parallel to network.edges; empty if continuous
};

struct EdgeAssign {
  std::vector<ExactDec> weights;  // d values on first-layer edges, 1 otherwise
  ExactDec bias;
};

struct Assignment {
  std::vector<EdgeAssign> edges;  // parallel to network.edges
};

enum class Kind { discrete, continuous };

/* Caches recomputed from the edge list after validation; never read from
 * input files. */
struct Topology {
  std::vector<std::string> order;  // topological, source first
  std::map<std::string, std::size_t> position;        // vertex -> order index
  std::map<std::string, std::vector<std::size_t>> in_edges;  // head -> edge ids
  std::vector<bool> first_layer;   // per edge: tail == source
  std::size_t width = 0;   // max vertex count at equal longest-path depth
  std::size_t depth = 0;   // longest source-to-output path, in edges
};

struct Provenance {
  std::uint64_t seed = 0;
  std::string recipe;
};

struct Instance {
  Network network;
  Dataset dataset;
  std::map<std::string, Activation> activations;  // exactly the non-source vertices
  Loss loss;
  ParamSpace params;
  ExactDec gamma;
  Kind kind = Kind::discrete;

  Topology topo;  // built by finalize()

  std::optional<SourceProblem> source_problem;  // embedded by `gen`
  std::optional<Provenance> provenance;         // seed/recipe header for seeded output
};

// All invariant violations, one line each; empty means valid.
std::vector<std::string> validate(const Instance& inst);

// Validates (throwing Errc::validation with the full report on failure) and
// rebuilds the topology cache. Every constructor of instances calls this.
void finalize(Instance& inst);

// True iff every weight/bias of theta lies in its set (continuous spaces
// accept everything). Throws Errc::membership on shape mismatch.
bool membership(const Assignment& theta, const Instance& inst);

}  // namespace nnt
