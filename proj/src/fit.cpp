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

#include "pcrank/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcrank/error.hpp"

namespace pcrank {

namespace {

void Reachable(const std::vector<std::vector<int>>& adj, int start,
               std::vector<char>& seen) {
  std::vector<int> stack = {start};
  seen[start] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
}

}  // namespace

std::vector<double> CvConfig::DefaultGrid() {
  constexpr int kCount = 50;
  std::vector<double> grid(kCount);
  for (int i = 0; i < kCount; ++i) {
    grid[i] = std::pow(10.0, -3.0 + 6.0 * i / (kCount - 1));
  }
  return grid;
}

void CvConfig::Validate() const {
  if (lambdas.empty()) {
    Fail(ErrorCode::kInvalidArgument, "cross-validation grid is empty");
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0) || !std::isfinite(lambdas[i])) {
      Fail(ErrorCode::kInvalidArgument, "grid values must be positive");
    }
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
      Fail(ErrorCode::kInvalidArgument, "grid must be strictly increasing");
    }
  }
}

FitResult FitRidge(const Dataset& dataset, double lambda, const ModelSpec& spec,
                   const OptimizerConfig& config) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    Fail(ErrorCode::kInvalidArgument, "ridge lambda must be positive");
  }
  spec.Validate();
  const OptimizeResult opt = MaximizeSmooth(
      [&](std::span<const double> mu) {
        return RidgeObjective(dataset, mu, spec, lambda);
      },
      std::vector<double>(dataset.team_count(), 0.0), config);

  FitResult fit;
  fit.teams = dataset.teams();
  fit.strengths = CenterStrengths({opt.argmax});
  fit.lambda = lambda;
  fit.cutpoints = spec.cutpoints;
  fit.method = Method::kRidgeFixed;
  fit.diagnostics.iterations = opt.iterations;
  fit.diagnostics.gradient_norm = opt.gradient_norm;
  fit.diagnostics.converged = opt.converged;
  return fit;
}

FitResult FitPeb(const Dataset& dataset, bool adjusted,
                 const OptimizerConfig& config, PebEstimate* details) {
  const PebEstimate est = TuneLambda(dataset, adjusted, config);
  FitResult fit =
      FitRidge(dataset, est.lambda, ModelSpec::FromCutpoints(est.cutpoints),
               config);
  fit.method = adjusted ? Method::kPebAdjusted : Method::kPeb;
  fit.diagnostics.no_signal = est.no_signal;
  if (details != nullptr) *details = est;
  return fit;
}

bool HasSeparation(const Dataset& dataset) {
  const std::size_t p = dataset.team_count();
  std::vector<std::vector<int>> forward(p), backward(p);
  std::vector<char> plays(p, 0);
  auto edge = [&](int winner, int loser) {
    forward[winner].push_back(loser);
    backward[loser].push_back(winner);
  };
  for (const Match& m : dataset.matches()) {
    plays[m.home] = plays[m.away] = 1;
    switch (m.outcome) {
      case Outcome::kHomeWin:
        edge(m.home, m.away);
        break;
      case Outcome::kAwayWin:
        edge(m.away, m.home);
        break;
      case Outcome::kDraw:
        edge(m.home, m.away);
        edge(m.away, m.home);
        break;
    }
  }
  const auto first = std::find(plays.begin(), plays.end(), 1);
  if (first == plays.end()) return false;
  const int start = static_cast<int>(first - plays.begin());
  std::vector<char> down(p, 0), up(p, 0);
  Reachable(forward, start, down);
  Reachable(backward, start, up);
  for (std::size_t t = 0; t < p; ++t) {
    if (plays[t] && !(down[t] && up[t])) return true;
  }
  return false;
}

namespace {

// A direction along which the likelihood never decreases when the data are
// separated: each team scores the number of teams it reaches through
// win (or draw) edges, itself included. Teams in one strongly connected
// block share a score, and every cross-block edge runs from a higher score
// to a lower one. Teams without matches get 0.
std::vector<double> RecessionDirection(const Dataset& dataset) {
  const std::size_t p = dataset.team_count();
  std::vector<std::vector<int>> forward(p), backward(p);
  std::vector<char> plays(p, 0);
  for (const Match& m : dataset.matches()) {
    plays[m.home] = plays[m.away] = 1;
    if (m.outcome != Outcome::kAwayWin) forward[m.home].push_back(m.away);
    if (m.outcome != Outcome::kHomeWin) forward[m.away].push_back(m.home);
  }
  std::vector<double> direction(p, 0.0);
  for (std::size_t t = 0; t < p; ++t) {
    if (!plays[t]) continue;
    std::vector<char> seen(p, 0);
    Reachable(forward, static_cast<int>(t), seen);
    direction[t] = static_cast<double>(std::count(seen.begin(), seen.end(), 1));
  }
  // Center within each connected group of teams: the likelihood does not
  // see shifts between groups that never meet, so those stay put.
  std::vector<std::vector<int>> undirected(p);
  for (std::size_t t = 0; t < p; ++t) {
    for (int u : forward[t]) {
      undirected[t].push_back(u);
      undirected[u].push_back(static_cast<int>(t));
    }
  }
  std::vector<char> done(p, 0);
  for (std::size_t t = 0; t < p; ++t) {
    if (!plays[t] || done[t]) continue;
    std::vector<char> group(p, 0);
    Reachable(undirected, static_cast<int>(t), group);
    double sum = 0.0;
    int size = 0;
    for (std::size_t u = 0; u < p; ++u) {
      if (group[u]) {
        sum += direction[u];
        ++size;
      }
    }
    for (std::size_t u = 0; u < p; ++u) {
      if (group[u]) {
        direction[u] -= sum / size;
        done[u] = 1;
      }
    }
  }
  return direction;
}

// Moves centered strengths along a non-decreasing likelihood direction until
// the largest magnitude reaches the trust cap.
void PushToTrustCap(const Dataset& dataset, std::vector<double>& mu) {
  const std::vector<double> step = RecessionDirection(dataset);
  auto reach = [&](double t) {
    double m = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      m = std::max(m, std::abs(mu[i] + t * step[i]));
    }
    return m;
  };
  double step_max = 0.0;
  for (double v : step) step_max = std::max(step_max, std::abs(v));
  if (step_max < 1e-12 || reach(0.0) >= kMleTrustCap) return;
  double lo = 0.0;
  double hi = 2.0 * kMleTrustCap / step_max + 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (reach(mid) < kMleTrustCap ? lo : hi) = mid;
  }
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] += lo * step[i];
}

}  // namespace

FitResult FitMle(const Dataset& dataset,
                 const std::optional<ModelSpec>& fixed_spec,
                 const OptimizerConfig& config) {
  const std::size_t p = dataset.team_count();
  const bool free_cutpoints = !fixed_spec.has_value();
  const bool free_ties = free_cutpoints && dataset.has_ties();
  if (fixed_spec) fixed_spec->Validate();

  Cutpoints start;
  if (fixed_spec) {
    start = fixed_spec->cutpoints;
  } else if (!dataset.empty()) {
    start = EstimateCutpoints(dataset).cutpoints;
  }
  const std::size_t n_mu = p > 0 ? p - 1 : 0;
  const std::size_t n_params = n_mu + (free_cutpoints ? 1 : 0) +
                               (free_ties ? 1 : 0);

  // Parameter layout: strengths of teams 1..p-1, then home advantage, then
  // log tie threshold.
  auto unpack = [&](std::span<const double> x, std::vector<double>& mu,
                    Cutpoints& c) {
    mu.assign(p, 0.0);
    for (std::size_t i = 0; i < n_mu; ++i) mu[i + 1] = x[i];
    c = start;
    if (free_cutpoints) c.home_advantage = x[n_mu];
    if (free_ties) c.tie_threshold = std::exp(x[n_mu + 1]);
  };

  std::vector<double> x0(n_params, 0.0);
  if (free_cutpoints) x0[n_mu] = start.home_advantage;
  if (free_ties) x0[n_mu + 1] = std::log(std::max(start.tie_threshold, 1e-3));

  const OptimizeResult opt = MaximizeSmooth(
      [&](std::span<const double> x) {
        std::vector<double> mu;
        Cutpoints c;
        unpack(x, mu, c);
        std::vector<double> g_mu(p, 0.0);
        double g_delta = 0.0;
        double g_gamma = 0.0;
        Evaluation e;
        for (const Match& m : dataset.matches()) {
          const MatchLogProb t =
              OutcomeLogProb(c, mu[m.home] - mu[m.away], m.outcome);
          e.value += t.value;
          g_mu[m.home] += t.d_difference;
          g_mu[m.away] -= t.d_difference;
          g_delta += t.d_difference;
          g_gamma += t.d_tie_threshold;
        }
        e.gradient.assign(n_params, 0.0);
        for (std::size_t i = 0; i < n_mu; ++i) e.gradient[i] = g_mu[i + 1];
        if (free_cutpoints) e.gradient[n_mu] = g_delta;
        if (free_ties) e.gradient[n_mu + 1] = g_gamma * c.tie_threshold;
        return e;
      },
      x0, config);

  std::vector<double> mu;
  Cutpoints c;
  unpack(opt.argmax, mu, c);

  FitResult fit;
  fit.teams = dataset.teams();
  fit.strengths = CenterStrengths({mu});
  fit.lambda = 0.0;
  fit.cutpoints = c;
  fit.method = Method::kMle;
  fit.diagnostics.iterations = opt.iterations;
  fit.diagnostics.gradient_norm = opt.gradient_norm;
  fit.diagnostics.converged = opt.converged;

  const auto [lo, hi] =
      std::minmax_element(fit.strengths.values.begin(),
                          fit.strengths.values.end());
  const bool wide = p > 0 && *hi - *lo > kMleSpreadLimit;
  const bool runaway_home = std::abs(c.home_advantage) > kMleSpreadLimit;
  const bool separated = HasSeparation(dataset);
  fit.diagnostics.diverged = wide || runaway_home || !opt.converged ||
                             separated;
  // The supremum lies at infinity; report the capped point on the ray.
  if (separated) PushToTrustCap(dataset, fit.strengths.values);
  for (double& v : fit.strengths.values) {
    v = std::clamp(v, -kMleTrustCap, kMleTrustCap);
  }
  return fit;
}

FitResult FitCv(const Dataset& dataset, const CvConfig& cv,
                const OptimizerConfig& config) {
  cv.Validate();
  const std::vector<int> weeks = dataset.Weeks();
  if (weeks.size() < 2) {
    Fail(ErrorCode::kInvalidArgument,
         "cross-validation needs at least two distinct weeks");
  }
  const ModelSpec spec =
      ModelSpec::FromCutpoints(EstimateCutpoints(dataset).cutpoints);

  std::vector<Dataset> train, test;
  for (int w : weeks) {
    train.push_back(dataset.Filter([w](const Match& m) { return m.week != w; }));
    test.push_back(dataset.Filter([w](const Match& m) { return m.week == w; }));
  }

  double best_lambda = cv.lambdas.front();
  double best_score = std::numeric_limits<double>::infinity();
  for (double lambda : cv.lambdas) {
    double loss = 0.0;
    for (std::size_t f = 0; f < weeks.size(); ++f) {
      const FitResult fold = FitRidge(train[f], lambda, spec, config);
      loss -= LogLik(test[f], fold.strengths.values, spec);
    }
    const double score = loss / static_cast<double>(dataset.match_count());
    if (score < best_score) {
      best_score = score;
      best_lambda = lambda;
    }
  }

  FitResult fit = FitRidge(dataset, best_lambda, spec, config);
  fit.method = Method::kCv;
  return fit;
}

}  // namespace pcrank
