// Copyright 2026 The pcrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PCRANK_OPTIMIZE_HPP_
#define PCRANK_OPTIMIZE_HPP_

#include <functional>
#include <span>
#include <vector>

#include "pcrank/likelihood.hpp"

namespace pcrank {

struct OptimizerConfig {
  double gradient_tolerance = 1e-8;
  int max_iterations = 500;
  double scalar_tolerance = 1e-10;

  void Validate() const;
};

using SmoothObjective = std::function<Evaluation(std::span<const double>)>;

struct OptimizeResult {
  std::vector<double> argmax;
  double value = 0.0;
  double gradient_norm = 0.0;  // infinity norm at argmax
  int iterations = 0;
  bool converged = false;
};

// BFGS ascent with a backtracking line search. Stops when the gradient
// infinity norm drops to the tolerance; otherwise returns the best point
// reached with converged = false.
OptimizeResult MaximizeSmooth(const SmoothObjective& objective,
                              std::vector<double> x0,
                              const OptimizerConfig& config = {});

// Brent's parabolic/golden-section search for a maximum on [lo, hi]. The
// endpoints are also compared so a monotone objective returns its boundary.
// Never evaluates outside [lo, hi].
double BrentMaxScalar(const std::function<double(double)>& objective,
                      double lo, double hi,
                      const OptimizerConfig& config = {});

}  // namespace pcrank

#endif  // PCRANK_OPTIMIZE_HPP_
