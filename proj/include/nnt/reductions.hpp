#pragma once

#include <cstddef>
#include <vector>

#include "nnt/netmodel.hpp"
#include "nnt/sources.hpp"

namespace nnt {

// Each builder returns a finalized discrete instance whose decision
// matches the source problem's, with the source embedded for later
// witness extraction.

// One hidden unit per item; picking an item means giving its edge the
// item's value instead of zero. The single data point forces the output
// sum to hit the target exactly.
Instance subset_sum_to_dnnt(const SubsetSumInstance& src);

// One hidden unit per variable holding a symbol number, one output per
// constraint packing both endpoint symbols into l + 2n*m. The decode
// loss accepts exactly the allowed pairs. Needs at least one constraint.
Instance csp_to_dnnt(const CspInstance& src);

// A single hidden unit whose weight vector is the cover's indicator.
// Element points force coverage multiplicity one; the closing point
// forces the cover size.
Instance exact_cover_to_dnnt(const ExactCoverInstance& src);

// Straight-line program as a chain: identity units add and subtract,
// digit-product units multiply through a shifted copy of the right
// operand. All parameter sets are singletons.
Instance slp_to_dnnt(const Slp& src);

// Discrete to continuous: every parameter gains a probe data point whose
// magnitude selects it through the wrapped activations, so any real
// solution within budgeted loss must sit on the original finite grid.
// Requires integer data and parameters, all-zero bias sets, no parallel
// edges, and a non-negative gamma.
Instance dnnt_to_cnnt(const Instance& disc);

// Embeds a discrete witness into the emitted continuous instance:
// first-layer edges gain a zero bias slot and a unit routing slot.
Assignment lift_assignment(const Assignment& theta, const Instance& disc,
                           const Instance& cont);

// Witness extraction. Each reads the assignment directly (never through
// the evaluator), refuses with a precondition error when it does not
// encode a solution, and returns 1-based indices.
std::vector<std::size_t> extract_subset_sum(const Assignment& theta,
                                            const Instance& inst);
std::vector<std::size_t> extract_csp(const Assignment& theta,
                                     const Instance& inst);
std::vector<std::size_t> extract_exact_cover(const Assignment& theta,
                                             const Instance& inst);

}  // namespace nnt
