#pragma once

#include <cstdint>
#include <optional>

#include "nnt/exactdec.hpp"
#include "nnt/netmodel.hpp"

namespace nnt {

struct SolveOptions {
  SolveOptions();                // budget seeded from NNT_ENUM_BUDGET if set
  std::uint64_t budget = 2000000;
  bool serial = false;           // force the reference enumeration path
};

struct SolveStats {
  std::uint64_t candidates = 0;     // enumeration space (brute force)
  std::uint64_t dim_entries = 0;    // per-unit table entries (dp)
  std::uint64_t final_entries = 0;  // combination table entries (dp)
  mpz_class w_max;
  mpz_class bound_m;
};

struct SolveResult {
  bool decision = false;
  ExactDec loss;                      // minimum total loss found
  std::optional<Assignment> witness;  // an assignment achieving `loss`
  SolveStats stats;
};

// Exhaustive search over the finite parameter space. The parallel entry
// point falls back to the serial one when built without OpenMP; both
// return identical results, including the witness.
SolveResult brute_force(const Instance& inst, const SolveOptions& opts = {});
SolveResult brute_force_serial(const Instance& inst,
                               const SolveOptions& opts = {});

// Value bound used by the dynamic program: the largest magnitude any
// network value, input entry, or point loss can reach. bound_m is
// input_dim * w_max * (number of hidden units).
struct ValueBound {
  mpz_class w_max;
  mpz_class bound_m;
};
ValueBound compute_bound(const Instance& inst);

// Layered dynamic program for two-layer single-output instances over
// natural parameters. Refuses anything outside that fragment.
SolveResult dp_solve(const Instance& inst, const SolveOptions& opts = {});

// Rescales a two-layer instance with decimal data into an equivalent one
// over naturals (inputs, weights, and biases become non-negative
// integers; targets and gamma are scaled to match). Refuses instances
// whose semantics would change under scaling. The exponent overload
// reports the powers of ten applied to inputs (p), first-layer
// parameters (q), and second-layer weights (r).
Instance scale_to_naturals(const Instance& inst);
Instance scale_to_naturals(const Instance& inst, std::uint32_t& p,
                           std::uint32_t& q, std::uint32_t& r);

// Maps a witness found on the scaled instance back onto the original
// parameter values. Exact: only the decimal point moves.
Assignment unscale_assignment(const Assignment& theta, const Instance& original,
                              std::uint32_t p, std::uint32_t q,
                              std::uint32_t r);

}  // namespace nnt
