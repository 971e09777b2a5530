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

// Double round-robin tournaments and the Monte Carlo study that trains on
// the first weeks of a simulated season and scores forecasts on the rest.

#ifndef PCRANK_SIMULATE_HPP_
#define PCRANK_SIMULATE_HPP_

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pcrank/types.hpp"

namespace pcrank {

struct Fixture {
  int home = 0;
  int away = 0;
};

struct Schedule {
  int teams = 0;
  std::vector<std::vector<Fixture>> weeks;
};

// Circle-method single round robin (p - 1 weeks) followed by the same weeks
// with home and away swapped. p must be even and at least 4.
Schedule MakeSchedule(int teams);

struct StrengthDistribution {
  enum class Kind { kNormal, kStudentT };

  Kind kind = Kind::kNormal;
  double nu = 8.0;  // degrees of freedom for kStudentT
  double lambda = 1.0;

  void Validate() const;
  // "normal", "t8", "t3", or "t:<nu>".
  std::string Label() const;
  static StrengthDistribution Parse(const std::string& label, double lambda);
};

// I.i.d. strengths with variance 1 / lambda. Student t draws are rescaled by
// sqrt((nu - 2) / (lambda * nu)).
StrengthVector SampleStrengths(int teams, const StrengthDistribution& dist,
                               std::mt19937_64& rng);

// Team names used for simulated teams: T01, T02, ...
std::string SimulatedTeamName(int index, int teams);

// Plays every scheduled match once. Week w of the schedule becomes week
// w + 1 of the dataset.
Dataset SimulateMatches(const Schedule& schedule, const StrengthVector& strengths,
                        const Cutpoints& cutpoints, std::mt19937_64& rng);

// Number of training weeks: fraction * total rounded half up, kept within
// [1, total - 1].
int TrainingWeeks(int total_weeks, double fraction);

// First TrainingWeeks() weeks for training, the rest for testing.
std::pair<Dataset, Dataset> SplitByFraction(const Dataset& dataset,
                                            const Schedule& schedule,
                                            double fraction);

// Per-replication seed for (base, scenario, replication).
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t scenario,
                         std::uint64_t replication);

struct StudyConfig {
  std::vector<int> teams = {20};
  std::vector<double> lambdas = {4.0};
  std::vector<double> fractions = {0.2};
  int replications = 100;
  StrengthDistribution::Kind dist = StrengthDistribution::Kind::kNormal;
  double nu = 8.0;
  Cutpoints cutpoints{0.0, 0.2};
  std::vector<Method> methods = {Method::kPeb, Method::kPebAdjusted,
                                 Method::kMle};
  std::uint64_t seed = 42;
  int threads = 1;

  void Validate() const;
  std::size_t ScenarioCount() const;
};

struct StudyRow {
  int scenario_id = 0;
  int teams = 0;
  double lambda_true = 0.0;
  double fraction = 0.0;
  std::string dist;
  int rep = 0;
  Method method = Method::kPeb;
  double ls = 0.0;   // NaN when the fit failed
  double lss = 0.0;  // NaN when the fit failed
};

// One row per (scenario, replication, method), sorted in that order.
// Scenarios enumerate teams, then lambdas, then fractions. Results do not
// depend on the thread count.
std::vector<StudyRow> RunStudy(const StudyConfig& config);

struct StudySummary {
  int scenario_id = 0;
  int teams = 0;
  double lambda_true = 0.0;
  double fraction = 0.0;
  Method method = Method::kPeb;
  double mean_lss = 0.0;
  int failures = 0;
};

std::vector<StudySummary> SummarizeStudy(const std::vector<StudyRow>& rows);

}  // namespace pcrank

#endif  // PCRANK_SIMULATE_HPP_
