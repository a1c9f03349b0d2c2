#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nnt/exactdec.hpp"
#include "nnt/netmodel.hpp"

namespace nnt {

struct EvalOptions {
  // Alternative evaluation order; must be a topological order of the
  // network. Defaults to the order built by finalize().
  const std::vector<std::string>* order = nullptr;
  bool want_full = false;
};

struct ForwardResult {
  std::vector<ExactDec> outputs;           // parallel to network.outputs
  std::map<std::string, ExactDec> values;  // filled when want_full is set
};

// Single forward pass on one input vector. Activations that require
// integer arguments throw Errc::evaluation when fed anything else.
ForwardResult forward(const Instance& inst, const Assignment& theta,
                      const std::vector<ExactDec>& x,
                      const EvalOptions& opts = {});

// Loss of one observed output vector against its target vector.
ExactDec base_point_loss(const BaseLoss& loss, const std::vector<ExactDec>& outs,
                         const std::vector<ExactDec>& ys);

// Loss of one data point (by index into the dataset).
ExactDec point_loss(const Instance& inst, const Assignment& theta,
                    std::size_t point_index);

// Sum of point losses over the whole dataset.
ExactDec total_loss(const Instance& inst, const Assignment& theta);

// True when the assignment achieves total loss at most gamma.
bool decide(const Instance& inst, const Assignment& theta);

}  // namespace nnt
