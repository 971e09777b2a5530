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

#include "pcrank/peb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "pcrank/error.hpp"
#include "pcrank/likelihood.hpp"
#include "pcrank/special.hpp"

namespace pcrank {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t Choose2(std::int64_t k) { return k * (k - 1) / 2; }

double SafeLog(double p) { return std::log(std::max(p, kProbabilityFloor)); }

}  // namespace

double LambdaToTau(double lambda) {
  if (!(lambda > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "lambda must be positive");
  }
  if (std::isinf(lambda)) return 0.0;
  return 2.0 / std::numbers::pi * std::asin(1.0 / (lambda + 2.0));
}

double TauToLambda(double tau) {
  if (!(tau > 0.0 && tau < 1.0 / 3.0)) {
    Fail(ErrorCode::kInvalidArgument, "tau must lie in (0, 1/3)");
  }
  const double s = std::sin(0.5 * std::numbers::pi * tau);
  return (1.0 - 2.0 * s) / s;
}

PairCounts CountPairsBinary(const Dataset& dataset) {
  if (dataset.has_ties()) {
    Fail(ErrorCode::kInvalidArgument,
         "binary pair counting needs a dataset without draws");
  }
  const std::size_t p = dataset.team_count();
  std::vector<std::int64_t> wins(p, 0), losses(p, 0);
  for (const Match& m : dataset.matches()) {
    const bool home_won = m.outcome == Outcome::kHomeWin;
    ++(home_won ? wins[m.home] : losses[m.home]);
    ++(home_won ? losses[m.away] : wins[m.away]);
  }
  PairCounts counts;
  counts.kind = PairCounts::Kind::kBinary;
  counts.teams = static_cast<int>(p);
  for (std::size_t t = 0; t < p; ++t) {
    counts.concordant += Choose2(wins[t]) + Choose2(losses[t]);
    counts.discordant += wins[t] * losses[t];
  }
  return counts;
}

PairCounts CountPairsGeneral(const Dataset& dataset) {
  const std::size_t p = dataset.team_count();
  std::vector<std::vector<Outcome>> home(p), away(p);
  // Matches are visited in index order, so each list is already canonical.
  for (const Match& m : dataset.matches()) {
    home[m.home].push_back(m.outcome);
    away[m.away].push_back(m.outcome);
  }
  PairCounts counts;
  counts.kind = PairCounts::Kind::kByRole;
  counts.teams = static_cast<int>(p);
  auto tabulate = [](const std::vector<Outcome>& list,
                     PairCounts::Table& table) {
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        ++table[OutcomeSlot(list[a])][OutcomeSlot(list[b])];
      }
    }
  };
  for (std::size_t t = 0; t < p; ++t) {
    tabulate(home[t], counts.same_home);
    tabulate(away[t], counts.same_away);
  }
  return counts;
}

double KendallTau(const PairCounts& counts, bool adjusted) {
  if (counts.kind != PairCounts::Kind::kBinary) {
    Fail(ErrorCode::kInvalidArgument, "Kendall tau needs binary pair counts");
  }
  const double c = static_cast<double>(counts.concordant);
  const double d = static_cast<double>(counts.discordant);
  const double denom = c + d + (adjusted ? counts.teams : 0);
  if (!(denom > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "Kendall tau has a zero denominator");
  }
  return std::clamp((c - d) / denom, kTauMin, kTauMax);
}

CutpointEstimate EstimateCutpoints(const Dataset& dataset) {
  if (dataset.empty()) {
    Fail(ErrorCode::kInvalidArgument, "cannot estimate cutpoints without data");
  }
  std::int64_t home_wins = 0;
  std::int64_t away_wins = 0;
  for (const Match& m : dataset.matches()) {
    if (m.outcome == Outcome::kHomeWin) ++home_wins;
    if (m.outcome == Outcome::kAwayWin) ++away_wins;
  }
  const double denom = static_cast<double>(dataset.match_count()) + 1.0;
  const double floor = 0.5 / denom;
  const double p_home = std::max(home_wins / denom, floor);
  const double p_away = std::max(away_wins / denom, floor);

  CutpointEstimate est;
  est.cutpoints.home_advantage =
      0.5 * (NormalQuantile(p_home) - NormalQuantile(p_away));
  if (dataset.has_ties()) {
    double gamma =
        0.5 * (NormalQuantile(1.0 - p_home) - NormalQuantile(p_away));
    if (gamma < 0.0) {
      gamma = 0.0;
      est.tie_threshold_clamped = true;
    }
    est.cutpoints.tie_threshold = gamma;
  }
  return est;
}

double PairwiseLogLik(double tau, const PairCounts& counts,
                      const Cutpoints& cutpoints, bool adjusted) {
  if (!(tau > 0.0 && tau < 1.0 / 3.0)) {
    Fail(ErrorCode::kInvalidArgument, "tau must lie in (0, 1/3)");
  }
  const Correlation rho(std::sin(0.5 * std::numbers::pi * tau));
  double ll = 0.0;

  if (counts.kind == PairCounts::Kind::kBinary) {
    if (std::abs(cutpoints.home_advantage) > kZeroCutpointTolerance ||
        cutpoints.tie_threshold > kZeroCutpointTolerance) {
      Fail(ErrorCode::kInvalidArgument,
           "binary pair counts need zero cutpoints");
    }
    // Outcomes from the common team's side: same sign is concordant.
    const double p_same = BivariateNormalRect(0.0, kInf, 0.0, kInf, rho);
    const double p_diff = BivariateNormalRect(0.0, kInf, -kInf, 0.0, rho);
    if (counts.concordant > 0) ll += counts.concordant * SafeLog(p_same);
    if (counts.discordant > 0) ll += counts.discordant * SafeLog(p_diff);
  } else {
    const std::array<double, 4> cut = {-kInf, cutpoints.lower(),
                                       cutpoints.upper(), kInf};
    for (int r = 0; r < 3; ++r) {
      for (int s = 0; s < 3; ++s) {
        const std::int64_t n = counts.same_home[r][s] + counts.same_away[r][s];
        if (n == 0) continue;
        const double prs =
            BivariateNormalRect(cut[r], cut[r + 1], cut[s], cut[s + 1], rho);
        ll += static_cast<double>(n) * SafeLog(prs);
      }
    }
  }
  if (adjusted) ll += counts.teams * std::log1p(-tau * tau);
  return ll;
}

PebEstimate TuneLambda(const Dataset& dataset, bool adjusted,
                       const OptimizerConfig& config) {
  PebEstimate est;
  est.adjusted = adjusted;
  const CutpointEstimate cut = EstimateCutpoints(dataset);
  est.cutpoints = cut.cutpoints;
  est.tie_threshold_clamped = cut.tie_threshold_clamped;

  est.closed_form =
      !dataset.has_ties() &&
      std::abs(est.cutpoints.home_advantage) <= kZeroCutpointTolerance;
  est.counts = est.closed_form ? CountPairsBinary(dataset)
                               : CountPairsGeneral(dataset);
  if (est.counts.total() == 0) {
    est.no_signal = true;
    est.tau = kTauMin;
    est.lambda = kLambdaMax;
    return est;
  }

  if (est.closed_form) {
    est.tau = KendallTau(est.counts, adjusted);
  } else {
    est.tau = BrentMaxScalar(
        [&](double tau) {
          return PairwiseLogLik(tau, est.counts, est.cutpoints, adjusted);
        },
        kTauMin, kTauMax, config);
  }
  est.lambda = std::min(TauToLambda(est.tau), kLambdaMax);
  return est;
}

}  // namespace pcrank
