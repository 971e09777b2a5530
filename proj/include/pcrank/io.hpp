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

// File formats:
//
//   match CSV       season,week,home,away,outcome     outcome in {H, D, A}
//   fixture CSV     week,home,away
//   prediction CSV  week,home,away,away_win,draw,home_win,unknown_team
//   study CSV       scenario_id,p,lambda_true,fraction,dist,rep,method,ls,lss
//   fit document    JSON, see FitDocumentToJson()
//
// Fields are plain (unquoted) and separated by commas; lines end in LF. A
// trailing CR is tolerated on input.

#ifndef PCRANK_IO_HPP_
#define PCRANK_IO_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcrank/likelihood.hpp"
#include "pcrank/simulate.hpp"
#include "pcrank/types.hpp"

namespace pcrank {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kFitDocumentVersion = 1;

struct MatchCsvRow {
  std::string season;
  int week = 1;
  std::string home;
  std::string away;
  Outcome outcome = Outcome::kHomeWin;
};

struct MatchFilter {
  std::optional<std::string> season;
  std::optional<int> max_week;  // keep week <= max_week
  std::optional<int> min_week;  // keep week >= min_week
};

std::vector<MatchCsvRow> ReadMatchCsv(std::istream& in);
void WriteMatchCsv(std::ostream& out, const std::vector<MatchCsvRow>& rows);

// Applies the filter and validates the remaining matches.
Dataset SelectMatches(const std::vector<MatchCsvRow>& rows,
                      const MatchFilter& filter);

struct FixtureRow {
  int week = 1;
  std::string home;
  std::string away;
};

std::vector<FixtureRow> ReadFixtureCsv(std::istream& in);

struct PredictionRow {
  FixtureRow fixture;
  ProbabilityTriple probs{};
  bool unknown_team = false;
};

// Unknown teams are predicted with strength 0 and flagged.
std::vector<PredictionRow> Predict(const FitResult& fit,
                                   const std::vector<FixtureRow>& fixtures);

void WritePredictionCsv(std::ostream& out,
                        const std::vector<PredictionRow>& rows);
std::vector<PredictionRow> ReadPredictionCsv(std::istream& in);

void WriteStudyCsv(std::ostream& out, const std::vector<StudyRow>& rows);
std::vector<StudyRow> ReadStudyCsv(std::istream& in);

// A fit plus where it came from.
struct FitDocument {
  FitResult fit;
  std::string input_digest;
  std::string tool_version{kToolVersion};
  int version = kFitDocumentVersion;
};

std::string FitDocumentToJson(const FitDocument& doc);
FitDocument FitDocumentFromJson(const std::string& text);

void WriteFitDocument(const std::string& path, const FitDocument& doc);
FitDocument ReadFitDocument(const std::string& path);

// "fnv1a64:<16 hex digits>" of the bytes.
std::string ContentDigest(std::string_view bytes);

std::string ReadFile(const std::string& path);

// Shortest text that parses back to the same double ("nan" for NaN).
std::string FormatDouble(double v);

}  // namespace pcrank

#endif  // PCRANK_IO_HPP_
