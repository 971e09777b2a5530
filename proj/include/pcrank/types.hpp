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

// Domain model shared by every pcrank module: match outcomes, validated
// datasets, strength vectors, cutpoints, pair counts and fit results.

#ifndef PCRANK_TYPES_HPP_
#define PCRANK_TYPES_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pcrank {

// Result of a match from the home team's point of view.
enum class Outcome : int { kAwayWin = -1, kDraw = 0, kHomeWin = 1 };

inline constexpr std::array<Outcome, 3> kOutcomes = {
    Outcome::kAwayWin, Outcome::kDraw, Outcome::kHomeWin};

// 0, 1, 2 for away win, draw, home win. Used to index probability triples.
inline constexpr int OutcomeSlot(Outcome o) { return static_cast<int>(o) + 1; }

// A match as it appears in an input file, before team indexing.
struct MatchRecord {
  int week = 1;
  std::string home;
  std::string away;
  Outcome outcome = Outcome::kHomeWin;

  bool operator==(const MatchRecord&) const = default;
};

// A match with teams resolved to indices into Dataset::teams().
struct Match {
  int week = 1;
  int home = 0;
  int away = 0;
  Outcome outcome = Outcome::kHomeWin;

  bool operator==(const Match&) const = default;
};

// An immutable, validated set of matches. Team indices follow the order of
// first appearance unless the dataset was derived from a parent by Filter(),
// in which case the parent's team list is kept.
class Dataset {
 public:
  Dataset() = default;

  // Validates indexed matches against an explicit team list.
  static Dataset FromIndexed(std::vector<std::string> teams,
                             std::vector<Match> matches);

  const std::vector<std::string>& teams() const { return teams_; }
  std::span<const Match> matches() const { return matches_; }
  std::size_t team_count() const { return teams_.size(); }
  std::size_t match_count() const { return matches_.size(); }
  bool empty() const { return matches_.empty(); }
  bool has_ties() const { return has_ties_; }

  std::optional<int> TeamIndex(std::string_view name) const;

  // Sorted distinct week values.
  std::vector<int> Weeks() const;

  std::vector<MatchRecord> Records() const;

  // Subset of matches; the team list is preserved.
  Dataset Filter(const std::function<bool(const Match&)>& keep) const;

  bool operator==(const Dataset& other) const {
    return teams_ == other.teams_ && matches_ == other.matches_;
  }

 private:
  std::vector<std::string> teams_;
  std::vector<Match> matches_;
  std::unordered_map<std::string, int> index_;
  bool has_ties_ = false;
};

// Builds a Dataset from raw records. Throws Error(kData) on self-matches,
// empty team names, non-positive weeks or a team playing twice in a week.
Dataset ValidateDataset(std::span<const MatchRecord> raw);

// Latent strengths, one per team.
struct StrengthVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  bool operator==(const StrengthVector&) const = default;
};

// Shifts strengths to sum to zero. Throws on non-finite entries.
StrengthVector CenterStrengths(const StrengthVector& s);

// Tie threshold and home advantage. The latent-scale cutoffs separating
// away win / draw / home win are lower() and upper().
struct Cutpoints {
  double tie_threshold = 0.0;
  double home_advantage = 0.0;

  double lower() const { return -tie_threshold - home_advantage; }
  double upper() const { return tie_threshold - home_advantage; }

  bool operator==(const Cutpoints&) const = default;
};

// Counts of correlated match pairs, i.e. pairs of matches with a team in
// common. kBinary holds concordant/discordant counts from the common team's
// point of view. kByRole tabulates ordered outcome pairs (home perspective)
// for pairs in which the common team plays in the same role both times.
struct PairCounts {
  enum class Kind { kBinary, kByRole };
  using Table = std::array<std::array<std::int64_t, 3>, 3>;

  Kind kind = Kind::kBinary;
  std::int64_t concordant = 0;
  std::int64_t discordant = 0;
  Table same_home{};
  Table same_away{};
  int teams = 0;

  std::int64_t total() const;
};

enum class Method { kMle, kRidgeFixed, kPeb, kPebAdjusted, kCv };

std::string_view MethodName(Method m);
std::optional<Method> ParseMethod(std::string_view name);

struct FitDiagnostics {
  int iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
  bool diverged = false;
  // PEB found no correlated match pairs to learn from.
  bool no_signal = false;
};

struct FitResult {
  std::vector<std::string> teams;
  StrengthVector strengths;
  double lambda = 0.0;
  Cutpoints cutpoints;
  Method method = Method::kRidgeFixed;
  FitDiagnostics diagnostics;

  std::optional<int> TeamIndex(std::string_view name) const;
};

}  // namespace pcrank

#endif  // PCRANK_TYPES_HPP_
