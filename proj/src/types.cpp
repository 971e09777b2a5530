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

#include "pcrank/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

#include "pcrank/error.hpp"

namespace pcrank {

Dataset Dataset::FromIndexed(std::vector<std::string> teams,
                             std::vector<Match> matches) {
  Dataset ds;
  for (std::size_t i = 0; i < teams.size(); ++i) {
    if (teams[i].empty()) Fail(ErrorCode::kData, "empty team name");
    auto [it, inserted] = ds.index_.emplace(teams[i], static_cast<int>(i));
    if (!inserted) Fail(ErrorCode::kData, "duplicate team '" + teams[i] + "'");
  }
  const int p = static_cast<int>(teams.size());
  std::set<std::pair<int, int>> seen;  // (week, team)
  for (const Match& m : matches) {
    if (m.week < 1) {
      Fail(ErrorCode::kData,
           "non-positive week index " + std::to_string(m.week));
    }
    if (m.home < 0 || m.home >= p || m.away < 0 || m.away >= p) {
      Fail(ErrorCode::kData, "unknown team index");
    }
    if (m.home == m.away) {
      Fail(ErrorCode::kData, "self-match: team '" + teams[m.home] +
                                 "' plays itself in week " +
                                 std::to_string(m.week));
    }
    for (int t : {m.home, m.away}) {
      if (!seen.emplace(m.week, t).second) {
        Fail(ErrorCode::kData, "team repeated in week: '" + teams[t] +
                                   "' in week " + std::to_string(m.week));
      }
    }
    if (m.outcome == Outcome::kDraw) ds.has_ties_ = true;
  }
  ds.teams_ = std::move(teams);
  ds.matches_ = std::move(matches);
  return ds;
}

std::optional<int> Dataset::TeamIndex(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> Dataset::Weeks() const {
  std::vector<int> weeks;
  weeks.reserve(matches_.size());
  for (const Match& m : matches_) weeks.push_back(m.week);
  std::sort(weeks.begin(), weeks.end());
  weeks.erase(std::unique(weeks.begin(), weeks.end()), weeks.end());
  return weeks;
}

std::vector<MatchRecord> Dataset::Records() const {
  std::vector<MatchRecord> out;
  out.reserve(matches_.size());
  for (const Match& m : matches_) {
    out.push_back({m.week, teams_[m.home], teams_[m.away], m.outcome});
  }
  return out;
}

Dataset Dataset::Filter(const std::function<bool(const Match&)>& keep) const {
  Dataset ds;
  ds.teams_ = teams_;
  ds.index_ = index_;
  for (const Match& m : matches_) {
    if (!keep(m)) continue;
    ds.matches_.push_back(m);
    if (m.outcome == Outcome::kDraw) ds.has_ties_ = true;
  }
  return ds;
}

Dataset ValidateDataset(std::span<const MatchRecord> raw) {
  std::vector<std::string> teams;
  std::unordered_map<std::string, int> index;
  auto intern = [&](const std::string& name) {
    if (name.empty()) Fail(ErrorCode::kData, "empty team name");
    auto [it, inserted] = index.emplace(name, static_cast<int>(teams.size()));
    if (inserted) teams.push_back(name);
    return it->second;
  };
  std::vector<Match> matches;
  matches.reserve(raw.size());
  for (const MatchRecord& r : raw) {
    const int home = intern(r.home);
    const int away = intern(r.away);
    matches.push_back({r.week, home, away, r.outcome});
  }
  return Dataset::FromIndexed(std::move(teams), std::move(matches));
}

StrengthVector CenterStrengths(const StrengthVector& s) {
  for (double v : s.values) {
    if (!std::isfinite(v)) {
      Fail(ErrorCode::kInvalidArgument, "non-finite strength");
    }
  }
  if (s.values.empty()) return s;
  const double mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) /
                      static_cast<double>(s.values.size());
  StrengthVector out = s;
  for (double& v : out.values) v -= mean;
  return out;
}

std::int64_t PairCounts::total() const {
  if (kind == Kind::kBinary) return concordant + discordant;
  std::int64_t n = 0;
  for (int r = 0; r < 3; ++r) {
    for (int s = 0; s < 3; ++s) n += same_home[r][s] + same_away[r][s];
  }
  return n;
}

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 5> kMethodNames = {{
    {Method::kMle, "mle"},
    {Method::kRidgeFixed, "ridge"},
    {Method::kPeb, "peb"},
    {Method::kPebAdjusted, "peb_adjusted"},
    {Method::kCv, "cv"},
}};

}  // namespace

std::string_view MethodName(Method m) {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "unknown";
}

std::optional<Method> ParseMethod(std::string_view name) {
  for (const auto& [method, n] : kMethodNames) {
    if (n == name) return method;
  }
  return std::nullopt;
}

std::optional<int> FitResult::TeamIndex(std::string_view name) const {
  for (std::size_t i = 0; i < teams.size(); ++i) {
    if (teams[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

}  // namespace pcrank
