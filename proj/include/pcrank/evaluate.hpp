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

#ifndef PCRANK_EVALUATE_HPP_
#define PCRANK_EVALUATE_HPP_

#include <cstddef>

#include "pcrank/likelihood.hpp"
#include "pcrank/types.hpp"

namespace pcrank {

// A constant forecast: the same (away win, draw, home win) for every match.
struct NaiveForecast {
  ProbabilityTriple probs{0.29, 0.25, 0.46};

  void Validate() const;
};

struct LogScoreResult {
  double ls = 0.0;
  std::size_t matches = 0;
  // Test matches involving a team the fit has no strength for. Those teams
  // are scored with strength 0.
  std::size_t unseen = 0;
};

// Negative mean log probability of the observed test outcomes.
LogScoreResult LogScore(const FitResult& fit, const Dataset& test);

// Empirical log score of a constant forecast on the test matches. Throws if
// an observed outcome has zero forecast probability.
double NaiveLogScore(const NaiveForecast& naive, const Dataset& test);

// Expected log score of a constant forecast when outcomes occur with its
// own probabilities (the forecast's entropy).
double NaiveLogScore(const NaiveForecast& naive);

// 1 - ls / ls_naive.
double SkillScore(double ls, double ls_naive);

}  // namespace pcrank

#endif  // PCRANK_EVALUATE_HPP_
