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

// Thurstone-Mosteller likelihood with a home-field intercept and ties.
//
// A match between home team i and away team j has latent score
//
//   Z = home_advantage + mu_i - mu_j + eps,   eps ~ N(0, 1)
//
// and ends in a home win when Z >= tie_threshold, an away win when
// Z < -tie_threshold, and a draw otherwise. Equivalently
//
//   Pr(Y <= y) = Phi(c_y - mu_i + mu_j)
//
// with c_{-1} = Cutpoints::lower(), c_0 = Cutpoints::upper(). The binary
// model without home effect is the special case of zero cutpoints.

#ifndef PCRANK_LIKELIHOOD_HPP_
#define PCRANK_LIKELIHOOD_HPP_

#include <array>
#include <span>
#include <vector>

#include "pcrank/types.hpp"

namespace pcrank {

// Match probabilities below this are clamped before taking logs.
inline constexpr double kProbabilityFloor = 1e-300;

struct ModelSpec {
  Cutpoints cutpoints;
  bool allows_ties = false;

  // Ties allowed exactly when the tie threshold is positive.
  static ModelSpec FromCutpoints(const Cutpoints& c);
  void Validate() const;
};

// (away win, draw, home win).
using ProbabilityTriple = std::array<double, 3>;

ProbabilityTriple MatchProbs(const ModelSpec& spec, double mu_home,
                             double mu_away);

// Log probability of one outcome and its derivatives with respect to the
// strength difference mu_home - mu_away (which equals the derivative with
// respect to home_advantage) and to tie_threshold. Floored probabilities
// report zero derivatives.
struct MatchLogProb {
  double value = 0.0;
  double d_difference = 0.0;
  double d_tie_threshold = 0.0;
};

MatchLogProb OutcomeLogProb(const Cutpoints& c, double difference,
                            Outcome outcome);

double LogLik(const Dataset& dataset, std::span<const double> strengths,
              const ModelSpec& spec);

std::vector<double> LogLikGrad(const Dataset& dataset,
                               std::span<const double> strengths,
                               const ModelSpec& spec);

struct Evaluation {
  double value = 0.0;
  std::vector<double> gradient;
};

// loglik(mu) - lambda/2 * |mu|^2 with gradient loglik_grad(mu) - lambda*mu.
Evaluation RidgeObjective(const Dataset& dataset,
                          std::span<const double> strengths,
                          const ModelSpec& spec, double lambda);

}  // namespace pcrank

#endif  // PCRANK_LIKELIHOOD_HPP_
