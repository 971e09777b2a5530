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

#include "pcrank/likelihood.hpp"

#include <cmath>
#include <limits>

#include "pcrank/error.hpp"
#include "pcrank/special.hpp"

namespace pcrank {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckDimension(const Dataset& dataset, std::span<const double> strengths) {
  if (strengths.size() != dataset.team_count()) {
    Fail(ErrorCode::kInvalidArgument,
         "strength vector has " + std::to_string(strengths.size()) +
             " entries for " + std::to_string(dataset.team_count()) + " teams");
  }
}

}  // namespace

ModelSpec ModelSpec::FromCutpoints(const Cutpoints& c) {
  ModelSpec spec{c, c.tie_threshold > 0.0};
  spec.Validate();
  return spec;
}

void ModelSpec::Validate() const {
  if (!std::isfinite(cutpoints.tie_threshold) ||
      !std::isfinite(cutpoints.home_advantage)) {
    Fail(ErrorCode::kInvalidArgument, "non-finite cutpoints");
  }
  if (cutpoints.tie_threshold < 0.0) {
    Fail(ErrorCode::kInvalidArgument, "tie threshold must be non-negative");
  }
  if (!allows_ties && cutpoints.tie_threshold != 0.0) {
    Fail(ErrorCode::kInvalidArgument,
         "a model without ties needs a zero tie threshold");
  }
}

ProbabilityTriple MatchProbs(const ModelSpec& spec, double mu_home,
                             double mu_away) {
  const double diff = mu_home - mu_away;
  const double lo = spec.cutpoints.lower() - diff;
  const double hi = spec.cutpoints.upper() - diff;
  return {NormalInterval(-kInf, lo), NormalInterval(lo, hi),
          NormalInterval(hi, kInf)};
}

MatchLogProb OutcomeLogProb(const Cutpoints& c, double difference,
                            Outcome outcome) {
  const double lo = c.lower() - difference;
  const double hi = c.upper() - difference;
  MatchLogProb out;
  double p = 0.0;
  switch (outcome) {
    case Outcome::kAwayWin: {
      p = NormalInterval(-kInf, lo);
      if (p < kProbabilityFloor) break;
      const double f = NormalPdf(lo) / p;
      out.d_difference = -f;
      out.d_tie_threshold = -f;
      break;
    }
    case Outcome::kDraw: {
      p = NormalInterval(lo, hi);
      if (p < kProbabilityFloor) break;
      const double fl = NormalPdf(lo) / p;
      const double fh = NormalPdf(hi) / p;
      out.d_difference = fl - fh;
      out.d_tie_threshold = fl + fh;
      break;
    }
    case Outcome::kHomeWin: {
      p = NormalInterval(hi, kInf);
      if (p < kProbabilityFloor) break;
      const double f = NormalPdf(hi) / p;
      out.d_difference = f;
      out.d_tie_threshold = -f;
      break;
    }
  }
  out.value = std::log(p < kProbabilityFloor ? kProbabilityFloor : p);
  return out;
}

double LogLik(const Dataset& dataset, std::span<const double> strengths,
              const ModelSpec& spec) {
  CheckDimension(dataset, strengths);
  double total = 0.0;
  for (const Match& m : dataset.matches()) {
    const double diff = strengths[m.home] - strengths[m.away];
    total += OutcomeLogProb(spec.cutpoints, diff, m.outcome).value;
  }
  return total;
}

std::vector<double> LogLikGrad(const Dataset& dataset,
                               std::span<const double> strengths,
                               const ModelSpec& spec) {
  CheckDimension(dataset, strengths);
  std::vector<double> grad(strengths.size(), 0.0);
  for (const Match& m : dataset.matches()) {
    const double diff = strengths[m.home] - strengths[m.away];
    const double g =
        OutcomeLogProb(spec.cutpoints, diff, m.outcome).d_difference;
    grad[m.home] += g;
    grad[m.away] -= g;
  }
  return grad;
}

Evaluation RidgeObjective(const Dataset& dataset,
                          std::span<const double> strengths,
                          const ModelSpec& spec, double lambda) {
  if (!(lambda >= 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "ridge penalty must be non-negative");
  }
  CheckDimension(dataset, strengths);
  Evaluation out;
  out.gradient.assign(strengths.size(), 0.0);
  for (const Match& m : dataset.matches()) {
    const double diff = strengths[m.home] - strengths[m.away];
    const MatchLogProb t = OutcomeLogProb(spec.cutpoints, diff, m.outcome);
    out.value += t.value;
    out.gradient[m.home] += t.d_difference;
    out.gradient[m.away] -= t.d_difference;
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < strengths.size(); ++i) {
    sq += strengths[i] * strengths[i];
    out.gradient[i] -= lambda * strengths[i];
  }
  out.value -= 0.5 * lambda * sq;
  return out;
}

}  // namespace pcrank
