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

#include "pcrank/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "pcrank/error.hpp"

namespace pcrank {

namespace {

using json = nlohmann::json;

constexpr std::string_view kMatchHeader = "season,week,home,away,outcome";
constexpr std::string_view kFixtureHeader = "week,home,away";
constexpr std::string_view kPredictionHeader =
    "week,home,away,away_win,draw,home_win,unknown_team";
constexpr std::string_view kStudyHeader =
    "scenario_id,p,lambda_true,fraction,dist,rep,method,ls,lss";

[[noreturn]] void DataError(int line, const std::string& what) {
  Fail(ErrorCode::kData, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

// Reads the header and the remaining non-empty lines, split into fields.
std::vector<std::pair<int, std::vector<std::string>>> ReadTable(
    std::istream& in, std::string_view header) {
  std::string line;
  int lineno = 0;
  std::vector<std::pair<int, std::vector<std::string>>> out;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!saw_header) {
      if (line != header) {
        DataError(lineno, "expected header '" + std::string(header) + "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitFields(line);
    const std::size_t want =
        static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
    if (fields.size() != want) {
      DataError(lineno, "expected " + std::to_string(want) + " fields, got " +
                            std::to_string(fields.size()));
    }
    out.emplace_back(lineno, std::move(fields));
  }
  if (!saw_header) DataError(1, "missing header");
  return out;
}

int ParseInt(const std::string& s, int line) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0' || errno != 0 ||
      v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    DataError(line, "bad integer '" + s + "'");
  }
  return static_cast<int>(v);
}

double ParseDouble(const std::string& s, int line) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') DataError(line, "bad number '" + s + "'");
  return v;
}

Outcome ParseOutcome(const std::string& s, int line) {
  if (s == "H") return Outcome::kHomeWin;
  if (s == "D") return Outcome::kDraw;
  if (s == "A") return Outcome::kAwayWin;
  DataError(line, "outcome must be H, D or A, got '" + s + "'");
}

char OutcomeLetter(Outcome o) {
  switch (o) {
    case Outcome::kHomeWin:
      return 'H';
    case Outcome::kDraw:
      return 'D';
    case Outcome::kAwayWin:
      return 'A';
  }
  return '?';
}

void CheckName(const std::string& name, int line) {
  if (name.empty()) DataError(line, "empty team name");
}

}  // namespace

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::vector<MatchCsvRow> ReadMatchCsv(std::istream& in) {
  std::vector<MatchCsvRow> rows;
  for (auto& [line, f] : ReadTable(in, kMatchHeader)) {
    MatchCsvRow r;
    r.season = f[0];
    r.week = ParseInt(f[1], line);
    r.home = f[2];
    r.away = f[3];
    CheckName(r.home, line);
    CheckName(r.away, line);
    r.outcome = ParseOutcome(f[4], line);
    rows.push_back(std::move(r));
  }
  return rows;
}

void WriteMatchCsv(std::ostream& out, const std::vector<MatchCsvRow>& rows) {
  out << kMatchHeader << '\n';
  for (const MatchCsvRow& r : rows) {
    out << r.season << ',' << r.week << ',' << r.home << ',' << r.away << ','
        << OutcomeLetter(r.outcome) << '\n';
  }
}

Dataset SelectMatches(const std::vector<MatchCsvRow>& rows,
                      const MatchFilter& filter) {
  std::vector<MatchRecord> kept;
  for (const MatchCsvRow& r : rows) {
    if (filter.season && r.season != *filter.season) continue;
    if (filter.max_week && r.week > *filter.max_week) continue;
    if (filter.min_week && r.week < *filter.min_week) continue;
    kept.push_back({r.week, r.home, r.away, r.outcome});
  }
  return ValidateDataset(kept);
}

std::vector<FixtureRow> ReadFixtureCsv(std::istream& in) {
  std::vector<FixtureRow> rows;
  for (auto& [line, f] : ReadTable(in, kFixtureHeader)) {
    FixtureRow r{ParseInt(f[0], line), f[1], f[2]};
    CheckName(r.home, line);
    CheckName(r.away, line);
    if (r.home == r.away) DataError(line, "self-match");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<PredictionRow> Predict(const FitResult& fit,
                                   const std::vector<FixtureRow>& fixtures) {
  const ModelSpec spec = ModelSpec::FromCutpoints(fit.cutpoints);
  std::vector<PredictionRow> out;
  out.reserve(fixtures.size());
  for (const FixtureRow& f : fixtures) {
    PredictionRow row;
    row.fixture = f;
    const auto home = fit.TeamIndex(f.home);
    const auto away = fit.TeamIndex(f.away);
    row.unknown_team = !home || !away;
    row.probs = MatchProbs(spec, home ? fit.strengths[*home] : 0.0,
                           away ? fit.strengths[*away] : 0.0);
    out.push_back(std::move(row));
  }
  return out;
}

void WritePredictionCsv(std::ostream& out,
                        const std::vector<PredictionRow>& rows) {
  out << kPredictionHeader << '\n';
  for (const PredictionRow& r : rows) {
    out << r.fixture.week << ',' << r.fixture.home << ',' << r.fixture.away
        << ',' << FormatDouble(r.probs[0]) << ',' << FormatDouble(r.probs[1])
        << ',' << FormatDouble(r.probs[2]) << ',' << (r.unknown_team ? 1 : 0)
        << '\n';
  }
}

std::vector<PredictionRow> ReadPredictionCsv(std::istream& in) {
  std::vector<PredictionRow> rows;
  for (auto& [line, f] : ReadTable(in, kPredictionHeader)) {
    PredictionRow r;
    r.fixture = {ParseInt(f[0], line), f[1], f[2]};
    for (int k = 0; k < 3; ++k) r.probs[k] = ParseDouble(f[3 + k], line);
    r.unknown_team = ParseInt(f[6], line) != 0;
    rows.push_back(std::move(r));
  }
  return rows;
}

void WriteStudyCsv(std::ostream& out, const std::vector<StudyRow>& rows) {
  out << kStudyHeader << '\n';
  for (const StudyRow& r : rows) {
    out << r.scenario_id << ',' << r.teams << ',' << FormatDouble(r.lambda_true)
        << ',' << FormatDouble(r.fraction) << ',' << r.dist << ',' << r.rep
        << ',' << MethodName(r.method) << ',' << FormatDouble(r.ls) << ','
        << FormatDouble(r.lss) << '\n';
  }
}

std::vector<StudyRow> ReadStudyCsv(std::istream& in) {
  std::vector<StudyRow> rows;
  for (auto& [line, f] : ReadTable(in, kStudyHeader)) {
    StudyRow r;
    r.scenario_id = ParseInt(f[0], line);
    r.teams = ParseInt(f[1], line);
    r.lambda_true = ParseDouble(f[2], line);
    r.fraction = ParseDouble(f[3], line);
    r.dist = f[4];
    r.rep = ParseInt(f[5], line);
    const auto method = ParseMethod(f[6]);
    if (!method) DataError(line, "unknown method '" + f[6] + "'");
    r.method = *method;
    r.ls = ParseDouble(f[7], line);
    r.lss = ParseDouble(f[8], line);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string FitDocumentToJson(const FitDocument& doc) {
  const FitResult& fit = doc.fit;
  json teams = json::array();
  for (std::size_t i = 0; i < fit.teams.size(); ++i) {
    teams.push_back({{"name", fit.teams[i]}, {"strength", fit.strengths[i]}});
  }
  const FitDiagnostics& d = fit.diagnostics;
  json j = {
      {"format", "pcrank-fit"},
      {"version", doc.version},
      {"tool_version", doc.tool_version},
      {"input_digest", doc.input_digest},
      {"method", MethodName(fit.method)},
      {"lambda", fit.lambda},
      {"cutpoints",
       {{"tie_threshold", fit.cutpoints.tie_threshold},
        {"home_advantage", fit.cutpoints.home_advantage}}},
      {"teams", teams},
      {"diagnostics",
       {{"iterations", d.iterations},
        {"gradient_norm", d.gradient_norm},
        {"converged", d.converged},
        {"diverged", d.diverged},
        {"no_signal", d.no_signal}}},
  };
  return j.dump(2) + "\n";
}

FitDocument FitDocumentFromJson(const std::string& text) {
  FitDocument doc;
  try {
    const json j = json::parse(text);
    if (j.at("format").get<std::string>() != "pcrank-fit") {
      Fail(ErrorCode::kData, "not a pcrank fit document");
    }
    doc.version = j.at("version").get<int>();
    if (doc.version != kFitDocumentVersion) {
      Fail(ErrorCode::kData, "unsupported fit document version " +
                                 std::to_string(doc.version));
    }
    doc.tool_version = j.at("tool_version").get<std::string>();
    doc.input_digest = j.at("input_digest").get<std::string>();
    const auto method = ParseMethod(j.at("method").get<std::string>());
    if (!method) Fail(ErrorCode::kData, "unknown method in fit document");
    FitResult& fit = doc.fit;
    fit.method = *method;
    fit.lambda = j.at("lambda").get<double>();
    fit.cutpoints.tie_threshold =
        j.at("cutpoints").at("tie_threshold").get<double>();
    fit.cutpoints.home_advantage =
        j.at("cutpoints").at("home_advantage").get<double>();
    for (const json& t : j.at("teams")) {
      fit.teams.push_back(t.at("name").get<std::string>());
      fit.strengths.values.push_back(t.at("strength").get<double>());
    }
    const json& d = j.at("diagnostics");
    fit.diagnostics.iterations = d.at("iterations").get<int>();
    fit.diagnostics.gradient_norm = d.at("gradient_norm").get<double>();
    fit.diagnostics.converged = d.at("converged").get<bool>();
    fit.diagnostics.diverged = d.at("diverged").get<bool>();
    fit.diagnostics.no_signal = d.at("no_signal").get<bool>();
  } catch (const json::exception& e) {
    Fail(ErrorCode::kData, std::string("malformed fit document: ") + e.what());
  }
  ModelSpec::FromCutpoints(doc.fit.cutpoints);
  return doc;
}

void WriteFitDocument(const std::string& path, const FitDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << FitDocumentToJson(doc);
  if (!out) Fail(ErrorCode::kIo, "failed writing '" + path + "'");
}

FitDocument ReadFitDocument(const std::string& path) {
  return FitDocumentFromJson(ReadFile(path));
}

std::string ContentDigest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pcrank
