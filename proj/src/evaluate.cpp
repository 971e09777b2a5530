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

#include "pcrank/evaluate.hpp"

#include <cmath>

#include "pcrank/error.hpp"

namespace pcrank {

void NaiveForecast::Validate() const {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      Fail(ErrorCode::kInvalidArgument,
           "naive probabilities must be non-negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    Fail(ErrorCode::kInvalidArgument, "naive probabilities must sum to 1");
  }
}

LogScoreResult LogScore(const FitResult& fit, const Dataset& test) {
  if (test.empty()) Fail(ErrorCode::kInvalidArgument, "empty test set");
  const ModelSpec spec = ModelSpec::FromCutpoints(fit.cutpoints);
  // Resolve test team indices to fit indices once.
  std::vector<std::optional<int>> to_fit(test.team_count());
  for (std::size_t t = 0; t < test.team_count(); ++t) {
    to_fit[t] = fit.TeamIndex(test.teams()[t]);
  }
  auto strength = [&](int t) {
    return to_fit[t] ? fit.strengths[*to_fit[t]] : 0.0;
  };
  LogScoreResult out;
  double total = 0.0;
  for (const Match& m : test.matches()) {
    if (!to_fit[m.home] || !to_fit[m.away]) ++out.unseen;
    total -= OutcomeLogProb(spec.cutpoints, strength(m.home) - strength(m.away),
                            m.outcome)
                 .value;
  }
  out.matches = test.match_count();
  out.ls = total / static_cast<double>(out.matches);
  return out;
}

double NaiveLogScore(const NaiveForecast& naive, const Dataset& test) {
  naive.Validate();
  if (test.empty()) Fail(ErrorCode::kInvalidArgument, "empty test set");
  double total = 0.0;
  for (const Match& m : test.matches()) {
    const double p = naive.probs[OutcomeSlot(m.outcome)];
    if (p <= 0.0) {
      Fail(ErrorCode::kInvalidArgument,
           "naive forecast gives zero probability to an observed outcome");
    }
    total -= std::log(p);
  }
  return total / static_cast<double>(test.match_count());
}

double NaiveLogScore(const NaiveForecast& naive) {
  naive.Validate();
  double h = 0.0;
  for (double p : naive.probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double SkillScore(double ls, double ls_naive) {
  if (!(ls_naive > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "reference log score must be positive");
  }
  return 1.0 - ls / ls_naive;
}

}  // namespace pcrank
