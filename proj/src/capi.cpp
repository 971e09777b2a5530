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

#include "pcrank/pcrank.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "pcrank/error.hpp"
#include "pcrank/evaluate.hpp"
#include "pcrank/fit.hpp"
#include "pcrank/io.hpp"
#include "pcrank/simulate.hpp"
#include "pcrank/types.hpp"

struct pcr_dataset {
  pcrank::Dataset data;
  std::string digest;
};

struct pcr_fit {
  pcrank::FitDocument doc;
};

struct pcr_study {
  std::vector<pcrank::StudyRow> rows;
  std::vector<pcrank::StudySummary> summary;
};

namespace {

thread_local std::string last_error;

pcr_status ToStatus(pcrank::ErrorCode code) {
  switch (code) {
    case pcrank::ErrorCode::kInvalidArgument:
      return PCR_ERR_INVALID_ARGUMENT;
    case pcrank::ErrorCode::kData:
      return PCR_ERR_DATA;
    case pcrank::ErrorCode::kIo:
      return PCR_ERR_IO;
    case pcrank::ErrorCode::kNumerical:
      return PCR_ERR_NUMERICAL;
  }
  return PCR_ERR_INTERNAL;
}

// Runs body, translating exceptions into status codes and last_error.
template <typename Body>
pcr_status Guard(Body&& body) {
  try {
    body();
    return PCR_OK;
  } catch (const pcrank::Error& e) {
    last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PCR_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PCR_ERR_INTERNAL;
  }
}

void RequireNonNull(const void* p, const char* what) {
  if (p == nullptr) {
    pcrank::Fail(pcrank::ErrorCode::kInvalidArgument,
                 std::string(what) + " must not be NULL");
  }
}

pcrank::Method ToMethod(pcr_method m) {
  switch (m) {
    case PCR_METHOD_MLE:
      return pcrank::Method::kMle;
    case PCR_METHOD_RIDGE:
      return pcrank::Method::kRidgeFixed;
    case PCR_METHOD_PEB:
      return pcrank::Method::kPeb;
    case PCR_METHOD_PEB_ADJUSTED:
      return pcrank::Method::kPebAdjusted;
    case PCR_METHOD_CV:
      return pcrank::Method::kCv;
  }
  pcrank::Fail(pcrank::ErrorCode::kInvalidArgument, "unknown method");
}

pcr_method FromMethod(pcrank::Method m) {
  switch (m) {
    case pcrank::Method::kMle:
      return PCR_METHOD_MLE;
    case pcrank::Method::kRidgeFixed:
      return PCR_METHOD_RIDGE;
    case pcrank::Method::kPeb:
      return PCR_METHOD_PEB;
    case pcrank::Method::kPebAdjusted:
      return PCR_METHOD_PEB_ADJUSTED;
    case pcrank::Method::kCv:
      return PCR_METHOD_CV;
  }
  return PCR_METHOD_PEB;
}

// Writes to the file at path, or to stdout when path is NULL.
template <typename Writer>
void WriteOutput(const char* path, Writer&& write) {
  if (path == nullptr) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    pcrank::Fail(pcrank::ErrorCode::kIo,
                 "cannot write '" + std::string(path) + "'");
  }
  write(out);
  if (!out) {
    pcrank::Fail(pcrank::ErrorCode::kIo,
                 "failed writing '" + std::string(path) + "'");
  }
}

template <typename Fitter>
pcr_status MakeFit(const pcr_dataset* dataset, pcr_fit** out, Fitter&& fitter) {
  return Guard([&] {
    RequireNonNull(dataset, "dataset");
    RequireNonNull(out, "out");
    *out = nullptr;
    auto fit = std::make_unique<pcr_fit>();
    fit->doc.fit = fitter(dataset->data);
    fit->doc.input_digest = dataset->digest;
    *out = fit.release();
  });
}

}  // namespace

extern "C" {

const char* pcr_version(void) {
  static const std::string version(pcrank::kToolVersion);
  return version.c_str();
}

const char* pcr_last_error(void) { return last_error.c_str(); }

const char* pcr_method_name(pcr_method method) {
  switch (method) {
    case PCR_METHOD_MLE:
      return "mle";
    case PCR_METHOD_RIDGE:
      return "ridge";
    case PCR_METHOD_PEB:
      return "peb";
    case PCR_METHOD_PEB_ADJUSTED:
      return "peb_adjusted";
    case PCR_METHOD_CV:
      return "cv";
  }
  return "unknown";
}

pcr_status pcr_method_parse(const char* name, pcr_method* out) {
  return Guard([&] {
    RequireNonNull(name, "name");
    RequireNonNull(out, "out");
    const auto m = pcrank::ParseMethod(name);
    if (!m) {
      pcrank::Fail(pcrank::ErrorCode::kInvalidArgument,
                   "unknown method '" + std::string(name) + "'");
    }
    *out = FromMethod(*m);
  });
}

pcr_status pcr_dataset_from_matches(const pcr_match* matches, size_t count,
                                    pcr_dataset** out) {
  return Guard([&] {
    RequireNonNull(out, "out");
    *out = nullptr;
    if (count > 0) RequireNonNull(matches, "matches");
    std::vector<pcrank::MatchRecord> records;
    std::vector<pcrank::MatchCsvRow> rows;
    for (size_t i = 0; i < count; ++i) {
      const pcr_match& m = matches[i];
      RequireNonNull(m.home, "home");
      RequireNonNull(m.away, "away");
      if (m.outcome < -1 || m.outcome > 1) {
        pcrank::Fail(pcrank::ErrorCode::kInvalidArgument, "bad outcome");
      }
      const auto o = static_cast<pcrank::Outcome>(m.outcome);
      records.push_back({m.week, m.home, m.away, o});
      rows.push_back({"", m.week, m.home, m.away, o});
    }
    auto ds = std::make_unique<pcr_dataset>();
    ds->data = pcrank::ValidateDataset(records);
    std::ostringstream canonical;
    pcrank::WriteMatchCsv(canonical, rows);
    ds->digest = pcrank::ContentDigest(canonical.str());
    *out = ds.release();
  });
}

pcr_status pcr_dataset_read_csv(const char* path, const char* season,
                                int min_week, int max_week, pcr_dataset** out) {
  return Guard([&] {
    RequireNonNull(path, "path");
    RequireNonNull(out, "out");
    *out = nullptr;
    const std::string bytes = pcrank::ReadFile(path);
    std::istringstream in(bytes);
    const auto rows = pcrank::ReadMatchCsv(in);
    pcrank::MatchFilter filter;
    if (season != nullptr) filter.season = season;
    if (min_week > 0) filter.min_week = min_week;
    if (max_week > 0) filter.max_week = max_week;
    auto ds = std::make_unique<pcr_dataset>();
    ds->data = pcrank::SelectMatches(rows, filter);
    ds->digest = pcrank::ContentDigest(bytes);
    *out = ds.release();
  });
}

void pcr_dataset_free(pcr_dataset* dataset) { delete dataset; }

size_t pcr_dataset_team_count(const pcr_dataset* dataset) {
  return dataset ? dataset->data.team_count() : 0;
}

size_t pcr_dataset_match_count(const pcr_dataset* dataset) {
  return dataset ? dataset->data.match_count() : 0;
}

int pcr_dataset_has_ties(const pcr_dataset* dataset) {
  return dataset && dataset->data.has_ties() ? 1 : 0;
}

const char* pcr_dataset_team_name(const pcr_dataset* dataset, size_t index) {
  if (!dataset || index >= dataset->data.team_count()) return nullptr;
  return dataset->data.teams()[index].c_str();
}

const char* pcr_dataset_digest(const pcr_dataset* dataset) {
  return dataset ? dataset->digest.c_str() : nullptr;
}

pcr_status pcr_fit_peb(const pcr_dataset* dataset, int adjusted,
                       pcr_fit** out) {
  return MakeFit(dataset, out, [&](const pcrank::Dataset& d) {
    return pcrank::FitPeb(d, adjusted != 0);
  });
}

pcr_status pcr_fit_mle(const pcr_dataset* dataset, pcr_fit** out) {
  return MakeFit(dataset, out,
                 [](const pcrank::Dataset& d) { return pcrank::FitMle(d); });
}

pcr_status pcr_fit_ridge(const pcr_dataset* dataset, double lambda,
                         pcr_fit** out) {
  return MakeFit(dataset, out, [&](const pcrank::Dataset& d) {
    pcrank::Require(lambda > 0.0, "ridge lambda must be positive");
    const auto spec = pcrank::ModelSpec::FromCutpoints(
        pcrank::EstimateCutpoints(d).cutpoints);
    return pcrank::FitRidge(d, lambda, spec);
  });
}

pcr_status pcr_fit_cv(const pcr_dataset* dataset, pcr_fit** out) {
  return MakeFit(dataset, out,
                 [](const pcrank::Dataset& d) { return pcrank::FitCv(d); });
}

void pcr_fit_free(pcr_fit* fit) { delete fit; }

size_t pcr_fit_team_count(const pcr_fit* fit) {
  return fit ? fit->doc.fit.teams.size() : 0;
}

const char* pcr_fit_team_name(const pcr_fit* fit, size_t index) {
  if (!fit || index >= fit->doc.fit.teams.size()) return nullptr;
  return fit->doc.fit.teams[index].c_str();
}

double pcr_fit_strength(const pcr_fit* fit, size_t index) {
  if (!fit || index >= fit->doc.fit.strengths.size()) return 0.0;
  return fit->doc.fit.strengths[index];
}

double pcr_fit_lambda(const pcr_fit* fit) {
  return fit ? fit->doc.fit.lambda : 0.0;
}

double pcr_fit_tie_threshold(const pcr_fit* fit) {
  return fit ? fit->doc.fit.cutpoints.tie_threshold : 0.0;
}

double pcr_fit_home_advantage(const pcr_fit* fit) {
  return fit ? fit->doc.fit.cutpoints.home_advantage : 0.0;
}

pcr_method pcr_fit_method(const pcr_fit* fit) {
  return fit ? FromMethod(fit->doc.fit.method) : PCR_METHOD_PEB;
}

void pcr_fit_diagnostics(const pcr_fit* fit, pcr_diagnostics* out) {
  if (!fit || !out) return;
  const pcrank::FitDiagnostics& d = fit->doc.fit.diagnostics;
  out->iterations = d.iterations;
  out->gradient_norm = d.gradient_norm;
  out->converged = d.converged ? 1 : 0;
  out->diverged = d.diverged ? 1 : 0;
  out->no_signal = d.no_signal ? 1 : 0;
}

const char* pcr_fit_input_digest(const pcr_fit* fit) {
  return fit ? fit->doc.input_digest.c_str() : nullptr;
}

pcr_status pcr_fit_save(const pcr_fit* fit, const char* path) {
  return Guard([&] {
    RequireNonNull(fit, "fit");
    RequireNonNull(path, "path");
    pcrank::WriteFitDocument(path, fit->doc);
  });
}

pcr_status pcr_fit_load(const char* path, pcr_fit** out) {
  return Guard([&] {
    RequireNonNull(path, "path");
    RequireNonNull(out, "out");
    *out = nullptr;
    auto fit = std::make_unique<pcr_fit>();
    fit->doc = pcrank::ReadFitDocument(path);
    *out = fit.release();
  });
}

pcr_status pcr_fit_predict(const pcr_fit* fit, const char* home,
                           const char* away, double probs[3],
                           int* unknown_team) {
  return Guard([&] {
    RequireNonNull(fit, "fit");
    RequireNonNull(home, "home");
    RequireNonNull(away, "away");
    RequireNonNull(probs, "probs");
    const auto rows = pcrank::Predict(fit->doc.fit, {{1, home, away}});
    for (int k = 0; k < 3; ++k) probs[k] = rows[0].probs[k];
    if (unknown_team) *unknown_team = rows[0].unknown_team ? 1 : 0;
  });
}

pcr_status pcr_predict_csv(const pcr_fit* fit, const char* fixtures_path,
                           const char* output_path, size_t* unknown_rows) {
  return Guard([&] {
    RequireNonNull(fit, "fit");
    RequireNonNull(fixtures_path, "fixtures_path");
    std::istringstream in(pcrank::ReadFile(fixtures_path));
    const auto rows =
        pcrank::Predict(fit->doc.fit, pcrank::ReadFixtureCsv(in));
    WriteOutput(output_path, [&](std::ostream& os) {
      pcrank::WritePredictionCsv(os, rows);
    });
    if (unknown_rows) {
      *unknown_rows = 0;
      for (const auto& r : rows) *unknown_rows += r.unknown_team ? 1 : 0;
    }
  });
}

pcr_status pcr_evaluate(const pcr_fit* fit, const pcr_dataset* test,
                        const double* naive, pcr_scores* out) {
  return Guard([&] {
    RequireNonNull(fit, "fit");
    RequireNonNull(test, "test");
    RequireNonNull(out, "out");
    pcrank::NaiveForecast forecast;
    if (naive) forecast.probs = {naive[0], naive[1], naive[2]};
    const pcrank::LogScoreResult ls = pcrank::LogScore(fit->doc.fit, test->data);
    out->ls = ls.ls;
    out->ls_naive = pcrank::NaiveLogScore(forecast);
    out->lss = pcrank::SkillScore(out->ls, out->ls_naive);
    out->matches = ls.matches;
    out->unseen = ls.unseen;
  });
}

pcr_status pcr_naive_log_score(const double naive[3], double* out) {
  return Guard([&] {
    RequireNonNull(naive, "naive");
    RequireNonNull(out, "out");
    *out = pcrank::NaiveLogScore(
        pcrank::NaiveForecast{{naive[0], naive[1], naive[2]}});
  });
}

void pcr_study_config_init(pcr_study_config* config) {
  if (!config) return;
  static const int kTeams[] = {20};
  static const double kLambdas[] = {4.0};
  static const double kFractions[] = {0.2};
  static const pcr_method kMethods[] = {PCR_METHOD_PEB, PCR_METHOD_PEB_ADJUSTED,
                                        PCR_METHOD_MLE};
  config->teams = kTeams;
  config->n_teams = 1;
  config->lambdas = kLambdas;
  config->n_lambdas = 1;
  config->fractions = kFractions;
  config->n_fractions = 1;
  config->replications = 100;
  config->dist = "normal";
  config->tie_threshold = 0.0;
  config->home_advantage = 0.2;
  config->methods = kMethods;
  config->n_methods = 3;
  config->seed = 42;
  config->threads = 1;
}

pcr_status pcr_study_run(const pcr_study_config* config, pcr_study** out) {
  return Guard([&] {
    RequireNonNull(config, "config");
    RequireNonNull(out, "out");
    *out = nullptr;
    pcrank::StudyConfig c;
    c.teams.assign(config->teams, config->teams + config->n_teams);
    c.lambdas.assign(config->lambdas, config->lambdas + config->n_lambdas);
    c.fractions.assign(config->fractions,
                       config->fractions + config->n_fractions);
    c.replications = config->replications;
    const auto dist = pcrank::StrengthDistribution::Parse(
        config->dist ? config->dist : "normal", 1.0);
    c.dist = dist.kind;
    c.nu = dist.nu;
    c.cutpoints = {config->tie_threshold, config->home_advantage};
    c.methods.clear();
    for (size_t i = 0; i < config->n_methods; ++i) {
      c.methods.push_back(ToMethod(config->methods[i]));
    }
    c.seed = config->seed;
    c.threads = config->threads;
    auto study = std::make_unique<pcr_study>();
    study->rows = pcrank::RunStudy(c);
    study->summary = pcrank::SummarizeStudy(study->rows);
    *out = study.release();
  });
}

void pcr_study_free(pcr_study* study) { delete study; }

size_t pcr_study_row_count(const pcr_study* study) {
  return study ? study->rows.size() : 0;
}

pcr_status pcr_study_write_csv(const pcr_study* study,
                               const char* output_path) {
  return Guard([&] {
    RequireNonNull(study, "study");
    WriteOutput(output_path, [&](std::ostream& os) {
      pcrank::WriteStudyCsv(os, study->rows);
    });
  });
}

size_t pcr_study_summary_count(const pcr_study* study) {
  return study ? study->summary.size() : 0;
}

pcr_status pcr_study_summary_at(const pcr_study* study, size_t index,
                                pcr_study_summary* out) {
  return Guard([&] {
    RequireNonNull(study, "study");
    RequireNonNull(out, "out");
    if (index >= study->summary.size()) {
      pcrank::Fail(pcrank::ErrorCode::kInvalidArgument,
                   "summary index out of range");
    }
    const pcrank::StudySummary& s = study->summary[index];
    out->scenario_id = s.scenario_id;
    out->teams = s.teams;
    out->lambda_true = s.lambda_true;
    out->fraction = s.fraction;
    out->method = FromMethod(s.method);
    out->mean_lss = s.mean_lss;
    out->failures = s.failures;
  });
}

}  // extern "C"
