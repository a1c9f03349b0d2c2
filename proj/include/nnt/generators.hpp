#pragma once

#include <cstdint>

#include "nnt/netmodel.hpp"
#include "nnt/sources.hpp"

namespace nnt {

// Seeded generators; the same arguments always produce the same bytes.

// Items uniform in [1, max_value]; about half the targets are sums of a
// real subset, the rest are perturbed and usually miss.
SubsetSumInstance random_subset_sum(std::uint64_t seed, std::size_t n,
                                    unsigned long max_value);

CspInstance random_csp(std::uint64_t seed, std::size_t vertices,
                       std::size_t alphabet, std::size_t constraints);

// About half the instances hide a planted exact cover of size k.
ExactCoverInstance random_exact_cover(std::uint64_t seed, std::size_t universe,
                                      std::size_t sets, std::size_t k);

// Random program whose multiplications always keep their right operand
// inside the digit-product domain (zero, or positive with a non-zero
// last digit); offending opcodes degrade to + or -. Values stay under
// digit_budget digits.
Slp random_slp(std::uint64_t seed, std::size_t length,
               std::uint64_t digit_budget);

// Random two-layer single-output instance over small naturals, sized so
// the full parameter grid stays under slot_cap candidates. Suitable for
// both solvers.
Instance random_two_layer(std::uint64_t seed, std::size_t d, std::size_t k,
                          std::size_t points, std::uint64_t slot_cap);

}  // namespace nnt
