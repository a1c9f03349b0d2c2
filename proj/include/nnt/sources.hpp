#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nnt {

struct SubsetSumInstance {
  std::vector<mpz_class> items;  // positive integers a_1..a_n
  mpz_class target;              // positive integer T
};

struct CspInstance {
  std::vector<std::string> vertices;
  // Alphabet order fixes the symbol<->number bijection (position, 1-based).
  std::vector<std::string> alphabet;
  struct Constraint {
    std::size_t u = 0, v = 0;  // vertex indices into `vertices`
    // Allowed (symbol, symbol) pairs as 0-based alphabet indices; non-empty.
    std::vector<std::pair<std::size_t, std::size_t>> allowed;
  };
  std::vector<Constraint> constraints;
};

struct ExactCoverInstance {
  std::size_t universe_size = 0;               // elements 1..n
  std::vector<std::vector<std::size_t>> sets;  // 1-based element indices
  std::size_t k = 0;                           // exact cover size bound
};

struct SlpOp {
  char op = '+';  // one of + - *
  std::size_t j = 0, k = 0;  // operand indices, both < i for instruction i
};

// Straight-line program over integers: a_0 = 1, a_i = a_j (op) a_k.
struct Slp {
  std::vector<SlpOp> instructions;  // instruction i (1-based) at index i-1
};

using SourceProblem =
    std::variant<SubsetSumInstance, CspInstance, ExactCoverInstance, Slp>;

// Structural validity; returns one line per violation (empty = valid).
std::vector<std::string> validate_source(const SourceProblem& src);

// Throws a validation error carrying the full report when invalid.
void require_valid_source(const SourceProblem& src);

struct OracleOptions {
  std::uint64_t enum_budget;   // candidate cap for the exhaustive oracles
  std::uint64_t digit_budget;  // SLP value size cap, decimal digits
  OracleOptions();             // defaults honor NNT_ENUM_BUDGET / NNT_SLP_DIGIT_BUDGET
};

struct OracleResult {
  bool decision = false;
  std::string witness;  // human-readable witness, empty for "no"
};

// Independent deciders: exhaustive enumeration for subset sum / CSP / exact
// cover, direct big-integer evaluation for SLPs. These never look at the
// network encodings, so they can referee them.
OracleResult oracle_decide(const SourceProblem& src,
                           const OracleOptions& opts = OracleOptions());

// a_0..a_len; throws a budget error once any value exceeds digit_budget digits.
std::vector<mpz_class> slp_eval(const Slp& p, std::uint64_t digit_budget);

SourceProblem parse_source(const std::string& text);
std::string serialize_source(const SourceProblem& src);

}  // namespace nnt
