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

// pcrank: fit, predict, evaluate and simulate paired-comparison ratings.
//
// Exit codes: 0 success, 2 usage error, 3 data or I/O error, 4 numerical
// non-convergence (output is still written), 1 internal error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pcrank/pcrank.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct DatasetDeleter {
  void operator()(pcr_dataset* d) const { pcr_dataset_free(d); }
};
struct FitDeleter {
  void operator()(pcr_fit* f) const { pcr_fit_free(f); }
};
struct StudyDeleter {
  void operator()(pcr_study* s) const { pcr_study_free(s); }
};
using DatasetPtr = std::unique_ptr<pcr_dataset, DatasetDeleter>;
using FitPtr = std::unique_ptr<pcr_fit, FitDeleter>;
using StudyPtr = std::unique_ptr<pcr_study, StudyDeleter>;

// Carries a library failure up to main() as an exit code.
struct Failure {
  int exit_code;
};

int ExitCodeFor(pcr_status status) {
  switch (status) {
    case PCR_OK:
      return kExitOk;
    case PCR_ERR_INVALID_ARGUMENT:
      return kExitUsage;
    case PCR_ERR_DATA:
    case PCR_ERR_IO:
      return kExitData;
    case PCR_ERR_NUMERICAL:
      return kExitNumerical;
    case PCR_ERR_INTERNAL:
      break;
  }
  return kExitInternal;
}

void Check(pcr_status status) {
  if (status == PCR_OK) return;
  std::fprintf(stderr, "pcrank: error: %s\n", pcr_last_error());
  throw Failure{ExitCodeFor(status)};
}

void UsageError(const std::string& message) {
  std::fprintf(stderr, "pcrank: error: %s\n", message.c_str());
  throw Failure{kExitUsage};
}

const char* OrNull(const std::string& s) {
  return s.empty() ? nullptr : s.c_str();
}

std::vector<double> ParseNaive(const std::string& text) {
  std::vector<double> probs;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      size_t used = 0;
      probs.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      UsageError("--naive expects three numbers \"a,d,h\"");
    }
  }
  if (probs.size() != 3) UsageError("--naive expects three numbers \"a,d,h\"");
  return probs;
}

void PrintStrengthTable(const pcr_fit* fit) {
  const size_t n = pcr_fit_team_count(fit);
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return pcr_fit_strength(fit, a) > pcr_fit_strength(fit, b);
  });
  size_t width = 4;
  for (size_t i = 0; i < n; ++i) {
    width = std::max(width, std::string(pcr_fit_team_name(fit, i)).size());
  }
  std::printf("method %s  lambda %.6g  tie_threshold %.6g  home_advantage %.6g\n",
              pcr_method_name(pcr_fit_method(fit)), pcr_fit_lambda(fit),
              pcr_fit_tie_threshold(fit), pcr_fit_home_advantage(fit));
  std::printf("%4s  %-*s  %10s\n", "rank", static_cast<int>(width), "team",
              "strength");
  for (size_t r = 0; r < n; ++r) {
    std::printf("%4zu  %-*s  %10.6f\n", r + 1, static_cast<int>(width),
                pcr_fit_team_name(fit, order[r]),
                pcr_fit_strength(fit, order[r]));
  }
}

struct FitOptions {
  std::string input;
  std::string method = "peb";
  double lambda = 0.0;
  bool adjusted = true;
  std::string season;
  int weeks = 0;
  std::string output;
};

int RunFit(const FitOptions& o, bool lambda_given) {
  pcr_method method;
  Check(pcr_method_parse(o.method.c_str(), &method));
  if (method == PCR_METHOD_PEB_ADJUSTED) {
    UsageError("use --method peb with --adjusted / --no-adjusted");
  }
  if (method == PCR_METHOD_RIDGE && !lambda_given) {
    UsageError("--method ridge requires --lambda");
  }
  if (method != PCR_METHOD_RIDGE && lambda_given) {
    UsageError("--lambda only applies to --method ridge");
  }
  pcr_dataset* raw_ds = nullptr;
  Check(pcr_dataset_read_csv(o.input.c_str(), OrNull(o.season), 0, o.weeks,
                             &raw_ds));
  DatasetPtr ds(raw_ds);

  pcr_fit* raw_fit = nullptr;
  switch (method) {
    case PCR_METHOD_PEB:
      Check(pcr_fit_peb(ds.get(), o.adjusted ? 1 : 0, &raw_fit));
      break;
    case PCR_METHOD_MLE:
      Check(pcr_fit_mle(ds.get(), &raw_fit));
      break;
    case PCR_METHOD_RIDGE:
      Check(pcr_fit_ridge(ds.get(), o.lambda, &raw_fit));
      break;
    case PCR_METHOD_CV:
      Check(pcr_fit_cv(ds.get(), &raw_fit));
      break;
    case PCR_METHOD_PEB_ADJUSTED:
      break;
  }
  FitPtr fit(raw_fit);
  if (!o.output.empty()) Check(pcr_fit_save(fit.get(), o.output.c_str()));
  PrintStrengthTable(fit.get());

  pcr_diagnostics diag;
  pcr_fit_diagnostics(fit.get(), &diag);
  if (diag.no_signal) {
    std::fprintf(stderr,
                 "pcrank: warning: no informative match pairs; strengths "
                 "shrunk to zero\n");
  }
  if (diag.diverged) {
    std::fprintf(stderr,
                 "pcrank: warning: maximum likelihood estimate diverges "
                 "(separated data); strengths were capped\n");
  }
  if (!diag.converged) {
    std::fprintf(stderr,
                 "pcrank: warning: optimizer did not converge after %d "
                 "iterations (gradient norm %.3g)\n",
                 diag.iterations, diag.gradient_norm);
    return kExitNumerical;
  }
  return kExitOk;
}

struct PredictOptions {
  std::string fit;
  std::string fixtures;
  std::string output;
};

int RunPredict(const PredictOptions& o) {
  pcr_fit* raw_fit = nullptr;
  Check(pcr_fit_load(o.fit.c_str(), &raw_fit));
  FitPtr fit(raw_fit);
  size_t unknown = 0;
  Check(pcr_predict_csv(fit.get(), o.fixtures.c_str(), OrNull(o.output),
                        &unknown));
  if (unknown > 0) {
    std::fprintf(stderr,
                 "pcrank: warning: %zu fixture(s) involve teams absent from "
                 "the fit; strength 0 used\n",
                 unknown);
  }
  return kExitOk;
}

struct EvaluateOptions {
  std::string fit;
  std::string input;
  std::string season;
  int from_week = 0;
  int to_week = 0;
  std::string naive = "0.29,0.25,0.46";
  std::string output;
};

int RunEvaluate(const EvaluateOptions& o) {
  const std::vector<double> naive = ParseNaive(o.naive);
  pcr_fit* raw_fit = nullptr;
  Check(pcr_fit_load(o.fit.c_str(), &raw_fit));
  FitPtr fit(raw_fit);
  pcr_dataset* raw_ds = nullptr;
  Check(pcr_dataset_read_csv(o.input.c_str(), OrNull(o.season), o.from_week,
                             o.to_week, &raw_ds));
  DatasetPtr test(raw_ds);
  pcr_scores s;
  Check(pcr_evaluate(fit.get(), test.get(), naive.data(), &s));

  std::printf("matches   %zu\n", s.matches);
  std::printf("ls        %.6f\n", s.ls);
  std::printf("ls_naive  %.6f\n", s.ls_naive);
  std::printf("lss       %.6f\n", s.lss);
  if (s.unseen > 0) {
    std::fprintf(stderr,
                 "pcrank: warning: %zu test match(es) involve teams absent "
                 "from the fit; strength 0 used\n",
                 s.unseen);
  }
  if (!o.output.empty()) {
    FILE* f = std::fopen(o.output.c_str(), "wb");
    if (f == nullptr) {
      std::fprintf(stderr, "pcrank: error: cannot write '%s'\n",
                   o.output.c_str());
      return kExitData;
    }
    std::fprintf(f, "matches,unseen,ls,ls_naive,lss\n%zu,%zu,%.17g,%.17g,%.17g\n",
                 s.matches, s.unseen, s.ls, s.ls_naive, s.lss);
    if (std::fclose(f) != 0) {
      std::fprintf(stderr, "pcrank: error: failed writing '%s'\n",
                   o.output.c_str());
      return kExitData;
    }
  }
  return kExitOk;
}

struct SimulateOptions {
  std::vector<int> teams = {20};
  std::vector<double> lambdas = {4.0};
  std::vector<double> fractions = {0.2};
  int reps = 100;
  std::string dist = "normal";
  double tie_threshold = 0.0;
  double home_advantage = 0.2;
  std::vector<std::string> methods = {"peb", "peb_adjusted", "mle"};
  uint64_t seed = 42;
  int threads = 1;
  std::string output;
};

int RunSimulate(const SimulateOptions& o) {
  std::vector<pcr_method> methods;
  for (const std::string& name : o.methods) {
    pcr_method m;
    Check(pcr_method_parse(name.c_str(), &m));
    methods.push_back(m);
  }
  pcr_study_config config;
  pcr_study_config_init(&config);
  config.teams = o.teams.data();
  config.n_teams = o.teams.size();
  config.lambdas = o.lambdas.data();
  config.n_lambdas = o.lambdas.size();
  config.fractions = o.fractions.data();
  config.n_fractions = o.fractions.size();
  config.replications = o.reps;
  config.dist = o.dist.c_str();
  config.tie_threshold = o.tie_threshold;
  config.home_advantage = o.home_advantage;
  config.methods = methods.data();
  config.n_methods = methods.size();
  config.seed = o.seed;
  config.threads = o.threads;

  pcr_study* raw = nullptr;
  Check(pcr_study_run(&config, &raw));
  StudyPtr study(raw);
  if (o.output.empty()) {
    Check(pcr_study_write_csv(study.get(), nullptr));
    return kExitOk;
  }
  Check(pcr_study_write_csv(study.get(), o.output.c_str()));

  std::printf("%8s  %4s  %10s  %8s  %-13s  %9s  %8s\n", "scenario", "p",
              "lambda", "fraction", "method", "mean_lss", "failures");
  const size_t n = pcr_study_summary_count(study.get());
  for (size_t i = 0; i < n; ++i) {
    pcr_study_summary s;
    Check(pcr_study_summary_at(study.get(), i, &s));
    std::printf("%8d  %4d  %10.6g  %8.4g  %-13s  %9.5f  %8d\n", s.scenario_id,
                s.teams, s.lambda_true, s.fraction, pcr_method_name(s.method),
                s.mean_lss, s.failures);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Paired-comparison ratings with empirical Bayes ridge tuning",
               "pcrank"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pcr_version()));
  app.set_config("--config", "",
                 "TOML/INI file of options; subcommand options go in a "
                 "[fit], [simulate], ... section");

  FitOptions fit_opts;
  CLI::App* fit = app.add_subcommand("fit", "Fit team strengths to a match CSV");
  fit->add_option("--input", fit_opts.input, "Match CSV")
      ->required()
      ->check(CLI::ExistingFile);
  fit->add_option("--method", fit_opts.method, "peb, mle, cv or ridge")
      ->check(CLI::IsMember({"peb", "mle", "cv", "ridge"}));
  CLI::Option* lambda_opt =
      fit->add_option("--lambda", fit_opts.lambda, "Penalty for --method ridge");
  fit->add_flag("--adjusted,!--no-adjusted", fit_opts.adjusted,
                "Use the small-sample adjusted tuning (default on)");
  fit->add_option("--season", fit_opts.season, "Keep only this season");
  fit->add_option("--weeks", fit_opts.weeks, "Keep weeks up to this one")
      ->check(CLI::PositiveNumber);
  fit->add_option("--output", fit_opts.output, "Fit document (JSON)");

  PredictOptions predict_opts;
  CLI::App* predict =
      app.add_subcommand("predict", "Outcome probabilities for fixtures");
  predict->add_option("--fit", predict_opts.fit, "Fit document")
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("--fixtures", predict_opts.fixtures, "Fixture CSV")
      ->required()
      ->check(CLI::ExistingFile);
  predict->add_option("--output", predict_opts.output,
                      "Prediction CSV (default stdout)");

  EvaluateOptions eval_opts;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Log score and skill score on test data");
  evaluate->add_option("--fit", eval_opts.fit, "Fit document")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--input", eval_opts.input, "Test match CSV")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--season", eval_opts.season, "Keep only this season");
  evaluate->add_option("--from-week", eval_opts.from_week,
                       "Keep weeks from this one")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--to-week", eval_opts.to_week,
                       "Keep weeks up to this one")
      ->check(CLI::PositiveNumber);
  evaluate->add_option("--naive", eval_opts.naive,
                       "Naive forecast \"away,draw,home\"")
      ->capture_default_str();
  evaluate->add_option("--output", eval_opts.output, "Score CSV");

  SimulateOptions sim_opts;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run a simulation study");
  simulate->add_option("--teams", sim_opts.teams, "Even team counts (>= 4)")
      ->delimiter(',')
      ->capture_default_str();
  simulate->add_option("--lambda", sim_opts.lambdas, "True penalty values")
      ->delimiter(',')
      ->capture_default_str();
  simulate->add_option("--fraction", sim_opts.fractions,
                       "Training fractions in (0, 1)")
      ->delimiter(',')
      ->capture_default_str();
  simulate->add_option("--reps", sim_opts.reps, "Replications per scenario")
      ->capture_default_str();
  simulate->add_option("--dist", sim_opts.dist, "normal, t8, t3 or t:<nu>")
      ->capture_default_str();
  simulate->add_option("--tie-threshold", sim_opts.tie_threshold,
                       "True tie threshold")
      ->capture_default_str();
  simulate->add_option("--home-advantage", sim_opts.home_advantage,
                       "True home advantage")
      ->capture_default_str();
  simulate->add_option("--methods", sim_opts.methods,
                       "mle, ridge, peb, peb_adjusted, cv")
      ->delimiter(',')
      ->capture_default_str();
  simulate->add_option("--seed", sim_opts.seed, "Base seed")
      ->capture_default_str();
  simulate->add_option("--threads", sim_opts.threads, "Worker threads")
      ->capture_default_str();
  simulate->add_option("--output", sim_opts.output,
                       "Study CSV (default stdout, summary suppressed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (fit->parsed()) return RunFit(fit_opts, lambda_opt->count() > 0);
    if (predict->parsed()) return RunPredict(predict_opts);
    if (evaluate->parsed()) return RunEvaluate(eval_opts);
    if (simulate->parsed()) return RunSimulate(sim_opts);
  } catch (const Failure& f) {
    return f.exit_code;
  }
  return kExitUsage;
}
