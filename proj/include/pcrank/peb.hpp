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

// Pairwise empirical Bayes selection of the ridge precision.
//
// Under a N(0, 1/lambda) prior on strengths, two matches that share a team
// in the same role have latent scores with correlation
//
//   rho = 1 / (lambda + 2)
//
// and the bivariate margins of their outcomes depend on lambda only through
// rho. Maximizing the likelihood built from all such pairs (a composite
// likelihood) gives lambda without integrating over the p-dimensional
// strength vector. Optimization runs in the Kendall parameterization
//
//   tau = (2 / pi) * asin(rho),   0 < tau < 1/3,
//
// which has the closed-form maximizer (c - d) / (c + d) when outcomes are
// binary and there is no home effect.

#ifndef PCRANK_PEB_HPP_
#define PCRANK_PEB_HPP_

#include "pcrank/optimize.hpp"
#include "pcrank/types.hpp"

namespace pcrank {

inline constexpr double kTauMin = 1e-6;
inline constexpr double kTauMax = 1.0 / 3.0 - 1e-6;
inline constexpr double kLambdaMax = 1e6;

// Cutpoints within this distance of zero select the closed-form path.
inline constexpr double kZeroCutpointTolerance = 1e-8;

double LambdaToTau(double lambda);
double TauToLambda(double tau);

// Concordant/discordant counts over all pairs of matches that share a team,
// judged from the shared team's side. A home-and-away pair of fixtures
// between the same two teams is counted once for each of them. Throws on
// datasets with draws.
PairCounts CountPairsBinary(const Dataset& dataset);

// Ordered outcome-pair tables over pairs of matches in which a team plays
// in the same role (both home or both away). Mixed-role pairs are skipped.
PairCounts CountPairsGeneral(const Dataset& dataset);

// (c - d) / (c + d), or (c - d) / (c + d + teams) when adjusted, clamped to
// [kTauMin, kTauMax].
double KendallTau(const PairCounts& counts, bool adjusted);

struct CutpointEstimate {
  Cutpoints cutpoints;
  bool tie_threshold_clamped = false;
};

// Moment estimates from the pooled home-win and away-win frequencies, each
// computed over n + 1 and floored at 1 / (2(n + 1)). Datasets without draws
// get a zero tie threshold.
CutpointEstimate EstimateCutpoints(const Dataset& dataset);

// Composite log likelihood of the pair counts at the given tau, plus
// teams * log(1 - tau^2) when adjusted.
double PairwiseLogLik(double tau, const PairCounts& counts,
                      const Cutpoints& cutpoints, bool adjusted);

struct PebEstimate {
  double tau = kTauMin;
  double lambda = kLambdaMax;
  bool adjusted = false;
  bool closed_form = false;
  bool no_signal = false;
  bool tie_threshold_clamped = false;
  PairCounts counts;
  Cutpoints cutpoints;
};

PebEstimate TuneLambda(const Dataset& dataset, bool adjusted,
                       const OptimizerConfig& config = {});

}  // namespace pcrank

#endif  // PCRANK_PEB_HPP_
