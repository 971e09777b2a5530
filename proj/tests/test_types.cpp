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

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "pcrank/error.hpp"
#include "pcrank/types.hpp"

using pcrank::Dataset;
using pcrank::MatchRecord;
using pcrank::Outcome;

namespace {

std::vector<MatchRecord> ThreeTeams() {
  return {{1, "A", "B", Outcome::kHomeWin},
          {2, "A", "C", Outcome::kHomeWin},
          {3, "B", "C", Outcome::kHomeWin}};
}

std::string ErrorText(const std::vector<MatchRecord>& raw) {
  try {
    pcrank::ValidateDataset(raw);
  } catch (const pcrank::Error& e) {
    CHECK(e.code() == pcrank::ErrorCode::kData);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("validate builds teams in first-appearance order") {
  const Dataset ds = pcrank::ValidateDataset(ThreeTeams());
  CHECK(ds.team_count() == 3);
  CHECK(ds.match_count() == 3);
  CHECK_FALSE(ds.has_ties());
  CHECK(ds.teams() == std::vector<std::string>{"A", "B", "C"});
  CHECK(ds.TeamIndex("C") == 2);
  CHECK_FALSE(ds.TeamIndex("Z").has_value());
}

TEST_CASE("has_ties is derived from draws") {
  auto raw = ThreeTeams();
  raw[1].outcome = Outcome::kDraw;
  CHECK(pcrank::ValidateDataset(raw).has_ties());
}

TEST_CASE("validation errors") {
  CHECK(ErrorText({{1, "A", "A", Outcome::kHomeWin}}).find("self-match") == 0);
  CHECK(ErrorText({{1, "A", "B", Outcome::kHomeWin},
                   {1, "C", "A", Outcome::kAwayWin}})
            .find("team repeated in week") == 0);
  CHECK_FALSE(ErrorText({{0, "A", "B", Outcome::kHomeWin}}).empty());
  CHECK_FALSE(ErrorText({{-3, "A", "B", Outcome::kHomeWin}}).empty());
  CHECK_FALSE(ErrorText({{1, "", "B", Outcome::kHomeWin}}).empty());
}

TEST_CASE("indexed construction rejects unknown teams and duplicates") {
  CHECK_THROWS_AS(Dataset::FromIndexed({"A", "B"}, {{1, 0, 2, Outcome::kDraw}}),
                  pcrank::Error);
  CHECK_THROWS_AS(Dataset::FromIndexed({"A", "A"}, {}), pcrank::Error);
}

TEST_CASE("validation is idempotent") {
  const Dataset once = pcrank::ValidateDataset(ThreeTeams());
  const auto records = once.Records();
  const Dataset twice = pcrank::ValidateDataset(records);
  CHECK(once == twice);
  CHECK(records == ThreeTeams());
}

TEST_CASE("weeks are sorted distinct values and may be sparse") {
  const Dataset ds = pcrank::ValidateDataset(
      std::vector<MatchRecord>{{9, "A", "B", Outcome::kHomeWin},
                               {2, "C", "D", Outcome::kDraw},
                               {9, "C", "E", Outcome::kAwayWin}});
  CHECK(ds.Weeks() == std::vector<int>{2, 9});
  const Dataset late = ds.Filter([](const pcrank::Match& m) { return m.week > 5; });
  CHECK(late.match_count() == 2);
  CHECK(late.team_count() == ds.team_count());
  CHECK_FALSE(late.has_ties());
}

TEST_CASE("empty dataset is valid") {
  const Dataset ds = pcrank::ValidateDataset(std::vector<MatchRecord>{});
  CHECK(ds.empty());
  CHECK(ds.team_count() == 0);
}

TEST_CASE("centering") {
  using pcrank::StrengthVector;
  CHECK(pcrank::CenterStrengths(StrengthVector{{1, 2, 3}}).values ==
        std::vector<double>{-1, 0, 1});
  CHECK(pcrank::CenterStrengths(StrengthVector{{0, 0}}).values ==
        std::vector<double>{0, 0});
  CHECK(pcrank::CenterStrengths(StrengthVector{}).values.empty());

  const StrengthVector s{{0.3, -1.7, 2.25, 5.5, -0.125}};
  const StrengthVector c = pcrank::CenterStrengths(s);
  double sum = 0;
  for (double v : c.values) sum += v;
  CHECK(std::fabs(sum) < 1e-14);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      CHECK(c[i] - c[j] == doctest::Approx(s[i] - s[j]).epsilon(1e-15));
    }
  }
  const StrengthVector cc = pcrank::CenterStrengths(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(cc[i] == doctest::Approx(c[i]).epsilon(1e-15));
  }
  CHECK_THROWS_AS(pcrank::CenterStrengths(
                      StrengthVector{{1.0, std::numeric_limits<double>::quiet_NaN()}}),
                  pcrank::Error);
  CHECK_THROWS_AS(pcrank::CenterStrengths(
                      StrengthVector{{std::numeric_limits<double>::infinity()}}),
                  pcrank::Error);
}

TEST_CASE("cutpoints and outcome slots") {
  const pcrank::Cutpoints c{0.3, 0.2};
  CHECK(c.lower() == doctest::Approx(-0.5));
  CHECK(c.upper() == doctest::Approx(0.1));
  CHECK(c.lower() <= c.upper());
  CHECK(pcrank::OutcomeSlot(Outcome::kAwayWin) == 0);
  CHECK(pcrank::OutcomeSlot(Outcome::kDraw) == 1);
  CHECK(pcrank::OutcomeSlot(Outcome::kHomeWin) == 2);
}

TEST_CASE("method names round trip") {
  for (auto m : {pcrank::Method::kMle, pcrank::Method::kRidgeFixed,
                 pcrank::Method::kPeb, pcrank::Method::kPebAdjusted,
                 pcrank::Method::kCv}) {
    CHECK(pcrank::ParseMethod(pcrank::MethodName(m)) == m);
  }
  CHECK_FALSE(pcrank::ParseMethod("bayes").has_value());
}
