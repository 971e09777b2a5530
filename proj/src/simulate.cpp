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

#include "pcrank/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <thread>
#include <tuple>

#include "pcrank/error.hpp"
#include "pcrank/evaluate.hpp"
#include "pcrank/fit.hpp"
#include "pcrank/likelihood.hpp"

namespace pcrank {

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

FitResult FitByMethod(Method method, const Dataset& train, double lambda_true) {
  switch (method) {
    case Method::kMle:
      return FitMle(train);
    case Method::kPeb:
      return FitPeb(train, /*adjusted=*/false);
    case Method::kPebAdjusted:
      return FitPeb(train, /*adjusted=*/true);
    case Method::kCv:
      return FitCv(train);
    case Method::kRidgeFixed:
      return FitRidge(
          train, lambda_true,
          ModelSpec::FromCutpoints(EstimateCutpoints(train).cutpoints));
  }
  Fail(ErrorCode::kInvalidArgument, "unknown method");
}

}  // namespace

Schedule MakeSchedule(int teams) {
  if (teams < 4 || teams % 2 != 0) {
    Fail(ErrorCode::kInvalidArgument,
         "round robin needs an even number of teams, at least 4");
  }
  const int rotating = teams - 1;
  Schedule s;
  s.teams = teams;
  for (int r = 0; r < rotating; ++r) {
    std::vector<Fixture> week;
    week.reserve(teams / 2);
    if (r % 2 == 0) {
      week.push_back({r, rotating});
    } else {
      week.push_back({rotating, r});
    }
    for (int k = 1; k < teams / 2; ++k) {
      const int a = (r + k) % rotating;
      const int b = (r - k + rotating) % rotating;
      if (k % 2 == 1) {
        week.push_back({a, b});
      } else {
        week.push_back({b, a});
      }
    }
    s.weeks.push_back(std::move(week));
  }
  for (int r = 0; r < rotating; ++r) {
    std::vector<Fixture> mirrored;
    for (const Fixture& f : s.weeks[r]) mirrored.push_back({f.away, f.home});
    s.weeks.push_back(std::move(mirrored));
  }
  return s;
}

void StrengthDistribution::Validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    Fail(ErrorCode::kInvalidArgument, "strength precision must be positive");
  }
  if (kind == Kind::kStudentT && !(nu > 2.0)) {
    Fail(ErrorCode::kInvalidArgument,
         "Student t strengths need more than 2 degrees of freedom");
  }
}

std::string StrengthDistribution::Label() const {
  if (kind == Kind::kNormal) return "normal";
  if (nu == std::floor(nu) && nu < 1e9) {
    return "t" + std::to_string(static_cast<long long>(nu));
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "t:%.17g", nu);
  return buf;
}

StrengthDistribution StrengthDistribution::Parse(const std::string& label,
                                                 double lambda) {
  StrengthDistribution d;
  d.lambda = lambda;
  if (label == "normal") {
    d.kind = Kind::kNormal;
  } else if (label.size() > 1 && label[0] == 't') {
    const std::string num = label.substr(label[1] == ':' ? 2 : 1);
    char* end = nullptr;
    d.kind = Kind::kStudentT;
    d.nu = std::strtod(num.c_str(), &end);
    if (num.empty() || end == nullptr || *end != '\0') {
      Fail(ErrorCode::kInvalidArgument, "bad distribution '" + label + "'");
    }
  } else {
    Fail(ErrorCode::kInvalidArgument, "bad distribution '" + label + "'");
  }
  d.Validate();
  return d;
}

StrengthVector SampleStrengths(int teams, const StrengthDistribution& dist,
                               std::mt19937_64& rng) {
  dist.Validate();
  StrengthVector s;
  s.values.resize(teams);
  if (dist.kind == StrengthDistribution::Kind::kNormal) {
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(dist.lambda));
    for (double& v : s.values) v = normal(rng);
  } else {
    std::student_t_distribution<double> t(dist.nu);
    const double scale = std::sqrt((dist.nu - 2.0) / (dist.lambda * dist.nu));
    for (double& v : s.values) v = scale * t(rng);
  }
  return s;
}

std::string SimulatedTeamName(int index, int teams) {
  const int width = teams >= 100 ? 3 : 2;
  char buf[16];
  std::snprintf(buf, sizeof(buf), "T%0*d", width, index + 1);
  return buf;
}

Dataset SimulateMatches(const Schedule& schedule,
                        const StrengthVector& strengths,
                        const Cutpoints& cutpoints, std::mt19937_64& rng) {
  if (static_cast<int>(strengths.size()) != schedule.teams) {
    Fail(ErrorCode::kInvalidArgument, "strength vector does not match schedule");
  }
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<std::string> names;
  for (int t = 0; t < schedule.teams; ++t) {
    names.push_back(SimulatedTeamName(t, schedule.teams));
  }
  std::vector<Match> matches;
  for (std::size_t w = 0; w < schedule.weeks.size(); ++w) {
    for (const Fixture& f : schedule.weeks[w]) {
      const double z = cutpoints.home_advantage + strengths[f.home] -
                       strengths[f.away] + noise(rng);
      Outcome o = Outcome::kDraw;
      if (z >= cutpoints.tie_threshold) {
        o = Outcome::kHomeWin;
      } else if (z < -cutpoints.tie_threshold) {
        o = Outcome::kAwayWin;
      }
      matches.push_back({static_cast<int>(w) + 1, f.home, f.away, o});
    }
  }
  return Dataset::FromIndexed(std::move(names), std::move(matches));
}

int TrainingWeeks(int total_weeks, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "training fraction must be in (0, 1)");
  }
  if (total_weeks < 2) {
    Fail(ErrorCode::kInvalidArgument, "need at least two weeks to split");
  }
  // The small offset keeps exact halves such as 9.5 from rounding down
  // after floating-point error.
  const int m = static_cast<int>(std::floor(fraction * total_weeks + 0.5 + 1e-9));
  return std::clamp(m, 1, total_weeks - 1);
}

std::pair<Dataset, Dataset> SplitByFraction(const Dataset& dataset,
                                            const Schedule& schedule,
                                            double fraction) {
  const int m = TrainingWeeks(static_cast<int>(schedule.weeks.size()), fraction);
  const std::vector<int> weeks = dataset.Weeks();
  // Weeks are ranked by sorted position so non-contiguous labels also work.
  const int cutoff = m <= static_cast<int>(weeks.size())
                         ? weeks[m - 1]
                         : std::numeric_limits<int>::max();
  return {dataset.Filter([cutoff](const Match& x) { return x.week <= cutoff; }),
          dataset.Filter([cutoff](const Match& x) { return x.week > cutoff; })};
}

std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t scenario,
                         std::uint64_t replication) {
  return SplitMix64(SplitMix64(SplitMix64(base) ^ scenario) ^ replication);
}

void StudyConfig::Validate() const {
  if (teams.empty() || lambdas.empty() || fractions.empty() ||
      methods.empty()) {
    Fail(ErrorCode::kInvalidArgument,
         "study needs teams, lambdas, fractions and methods");
  }
  for (int p : teams) {
    if (p < 4 || p % 2 != 0) {
      Fail(ErrorCode::kInvalidArgument,
           "team counts must be even and at least 4");
    }
  }
  for (double l : lambdas) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      Fail(ErrorCode::kInvalidArgument, "lambdas must be positive");
    }
  }
  for (double f : fractions) {
    if (!(f > 0.0 && f < 1.0)) {
      Fail(ErrorCode::kInvalidArgument, "fractions must be in (0, 1)");
    }
  }
  if (replications < 1) {
    Fail(ErrorCode::kInvalidArgument, "replication count must be at least 1");
  }
  if (threads < 1) {
    Fail(ErrorCode::kInvalidArgument, "thread count must be at least 1");
  }
  if (dist == StrengthDistribution::Kind::kStudentT && !(nu > 2.0)) {
    Fail(ErrorCode::kInvalidArgument,
         "Student t strengths need more than 2 degrees of freedom");
  }
  ModelSpec::FromCutpoints(cutpoints);
}

std::size_t StudyConfig::ScenarioCount() const {
  return teams.size() * lambdas.size() * fractions.size();
}

std::vector<StudyRow> RunStudy(const StudyConfig& config) {
  config.Validate();
  struct Scenario {
    int teams;
    double lambda;
    double fraction;
  };
  std::vector<Scenario> scenarios;
  for (int p : config.teams) {
    for (double l : config.lambdas) {
      for (double f : config.fractions) scenarios.push_back({p, l, f});
    }
  }
  std::map<int, Schedule> schedules;
  for (int p : config.teams) schedules.emplace(p, MakeSchedule(p));

  const ModelSpec truth = ModelSpec::FromCutpoints(config.cutpoints);
  const ProbabilityTriple base_rates = MatchProbs(truth, 0.0, 0.0);
  const double ls_naive = NaiveLogScore(NaiveForecast{base_rates});

  const std::size_t n_methods = config.methods.size();
  const std::size_t n_tasks = scenarios.size() * config.replications;
  std::vector<StudyRow> rows(n_tasks * n_methods);

  auto run_task = [&](std::size_t task) {
    const std::size_t sc = task / config.replications;
    const int rep = static_cast<int>(task % config.replications);
    const Scenario& s = scenarios[sc];
    StrengthDistribution dist{config.dist, config.nu, s.lambda};
    std::mt19937_64 rng(DeriveSeed(config.seed, sc, rep));
    const Schedule& schedule = schedules.at(s.teams);
    const StrengthVector mu = SampleStrengths(s.teams, dist, rng);
    const Dataset season = SimulateMatches(schedule, mu, config.cutpoints, rng);
    const auto [train, test] = SplitByFraction(season, schedule, s.fraction);
    for (std::size_t k = 0; k < n_methods; ++k) {
      StudyRow& row = rows[task * n_methods + k];
      row.scenario_id = static_cast<int>(sc);
      row.teams = s.teams;
      row.lambda_true = s.lambda;
      row.fraction = s.fraction;
      row.dist = dist.Label();
      row.rep = rep;
      row.method = config.methods[k];
      try {
        const FitResult fit = FitByMethod(config.methods[k], train, s.lambda);
        row.ls = LogScore(fit, test).ls;
        row.lss = SkillScore(row.ls, ls_naive);
      } catch (const std::exception&) {
        row.ls = std::numeric_limits<double>::quiet_NaN();
        row.lss = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };

  const int workers =
      static_cast<int>(std::min<std::size_t>(config.threads, n_tasks));
  if (workers <= 1) {
    for (std::size_t t = 0; t < n_tasks; ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < n_tasks; t = next++) run_task(t);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return rows;
}

std::vector<StudySummary> SummarizeStudy(const std::vector<StudyRow>& rows) {
  std::map<std::pair<int, int>, StudySummary> acc;
  std::map<std::pair<int, int>, int> counts;
  for (const StudyRow& r : rows) {
    const auto key = std::make_pair(r.scenario_id, static_cast<int>(r.method));
    StudySummary& s = acc[key];
    s.scenario_id = r.scenario_id;
    s.teams = r.teams;
    s.lambda_true = r.lambda_true;
    s.fraction = r.fraction;
    s.method = r.method;
    if (std::isnan(r.lss)) {
      ++s.failures;
    } else {
      s.mean_lss += r.lss;
      ++counts[key];
    }
  }
  std::vector<StudySummary> out;
  for (auto& [key, s] : acc) {
    const int n = counts[key];
    s.mean_lss = n > 0 ? s.mean_lss / n : std::numeric_limits<double>::quiet_NaN();
    out.push_back(s);
  }
  return out;
}

}  // namespace pcrank
