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

// Strength estimators: ridge at a given precision, ridge tuned by pairwise
// empirical Bayes, ridge tuned by leave-one-week-out cross-validation, and
// plain maximum likelihood.

#ifndef PCRANK_FIT_HPP_
#define PCRANK_FIT_HPP_

#include <optional>
#include <vector>

#include "pcrank/likelihood.hpp"
#include "pcrank/optimize.hpp"
#include "pcrank/peb.hpp"
#include "pcrank/types.hpp"

namespace pcrank {

// Reported MLE strengths are clamped to +/- this value.
inline constexpr double kMleTrustCap = 25.0;
// A strength spread beyond this marks the MLE as divergent.
inline constexpr double kMleSpreadLimit = 10.0;

struct CvConfig {
  std::vector<double> lambdas = DefaultGrid();

  // 50 log-spaced values in [1e-3, 1e3].
  static std::vector<double> DefaultGrid();
  void Validate() const;
};

// Maximizes the ridge objective from the zero vector with cutpoints held
// at spec. The returned strengths are centered.
FitResult FitRidge(const Dataset& dataset, double lambda, const ModelSpec& spec,
                   const OptimizerConfig& config = {});

FitResult FitPeb(const Dataset& dataset, bool adjusted,
                 const OptimizerConfig& config = {},
                 PebEstimate* details = nullptr);

// Unpenalized fit with the first team's strength pinned at zero during
// optimization. Without fixed_spec, the home advantage (and the tie
// threshold, if the data have draws) are estimated jointly. Separation in
// the data, a strength spread above kMleSpreadLimit, or an unconverged
// optimizer set diagnostics.diverged; the result is still returned.
FitResult FitMle(const Dataset& dataset,
                 const std::optional<ModelSpec>& fixed_spec = std::nullopt,
                 const OptimizerConfig& config = {});

// True when some split of the teams has one side never beating (or drawing
// with) the other, in which case maximum likelihood strengths are infinite.
bool HasSeparation(const Dataset& dataset);

FitResult FitCv(const Dataset& dataset, const CvConfig& cv = {},
                const OptimizerConfig& config = {});

}  // namespace pcrank

#endif  // PCRANK_FIT_HPP_
