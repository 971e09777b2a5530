/*
 * Copyright 2026 The pcrank Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libpcrank: paired-comparison ratings with a ridge-penalized
 * Thurstone-Mosteller model.
 *
 * Objects are opaque handles created by pcr_*_create / read / fit / run
 * functions and released with the matching pcr_*_free. Every function that
 * can fail returns a pcr_status; on failure pcr_last_error() describes the
 * problem. The message is per thread and valid until the next failing call
 * on that thread. Strings returned by accessors are owned by the handle.
 */

#ifndef PCRANK_PCRANK_H_
#define PCRANK_PCRANK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PCRANK_BUILDING_LIBRARY)
#define PCRANK_API __declspec(dllexport)
#else
#define PCRANK_API __declspec(dllimport)
#endif
#else
#define PCRANK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pcr_status {
  PCR_OK = 0,
  PCR_ERR_INVALID_ARGUMENT = 1,
  PCR_ERR_DATA = 2,
  PCR_ERR_IO = 3,
  PCR_ERR_NUMERICAL = 4,
  PCR_ERR_INTERNAL = 5
} pcr_status;

typedef enum pcr_method {
  PCR_METHOD_MLE = 0,
  PCR_METHOD_RIDGE = 1,
  PCR_METHOD_PEB = 2,
  PCR_METHOD_PEB_ADJUSTED = 3,
  PCR_METHOD_CV = 4
} pcr_method;

typedef enum pcr_outcome {
  PCR_AWAY_WIN = -1,
  PCR_DRAW = 0,
  PCR_HOME_WIN = 1
} pcr_outcome;

typedef struct pcr_dataset pcr_dataset;
typedef struct pcr_fit pcr_fit;
typedef struct pcr_study pcr_study;

PCRANK_API const char* pcr_version(void);
PCRANK_API const char* pcr_last_error(void);
PCRANK_API const char* pcr_method_name(pcr_method method);
/* Accepts "mle", "ridge", "peb", "peb_adjusted", "cv". */
PCRANK_API pcr_status pcr_method_parse(const char* name, pcr_method* out);

/* ---- datasets ---------------------------------------------------------- */

typedef struct pcr_match {
  int week;
  const char* home;
  const char* away;
  int outcome; /* pcr_outcome */
} pcr_match;

PCRANK_API pcr_status pcr_dataset_from_matches(const pcr_match* matches,
                                               size_t count,
                                               pcr_dataset** out);

/* Reads a match CSV. season may be NULL (all seasons). Matches with week
 * outside [min_week, max_week] are dropped; pass 0 to disable a bound. */
PCRANK_API pcr_status pcr_dataset_read_csv(const char* path, const char* season,
                                           int min_week, int max_week,
                                           pcr_dataset** out);
PCRANK_API void pcr_dataset_free(pcr_dataset* dataset);

PCRANK_API size_t pcr_dataset_team_count(const pcr_dataset* dataset);
PCRANK_API size_t pcr_dataset_match_count(const pcr_dataset* dataset);
PCRANK_API int pcr_dataset_has_ties(const pcr_dataset* dataset);
PCRANK_API const char* pcr_dataset_team_name(const pcr_dataset* dataset,
                                             size_t index);
/* Digest of the source bytes, "fnv1a64:<hex>". */
PCRANK_API const char* pcr_dataset_digest(const pcr_dataset* dataset);

/* ---- fits -------------------------------------------------------------- */

typedef struct pcr_diagnostics {
  int iterations;
  double gradient_norm;
  int converged;
  int diverged;
  int no_signal;
} pcr_diagnostics;

PCRANK_API pcr_status pcr_fit_peb(const pcr_dataset* dataset, int adjusted,
                                  pcr_fit** out);
PCRANK_API pcr_status pcr_fit_mle(const pcr_dataset* dataset, pcr_fit** out);
/* Cutpoints are estimated from the data; lambda must be > 0. */
PCRANK_API pcr_status pcr_fit_ridge(const pcr_dataset* dataset, double lambda,
                                    pcr_fit** out);
PCRANK_API pcr_status pcr_fit_cv(const pcr_dataset* dataset, pcr_fit** out);
PCRANK_API void pcr_fit_free(pcr_fit* fit);

PCRANK_API size_t pcr_fit_team_count(const pcr_fit* fit);
PCRANK_API const char* pcr_fit_team_name(const pcr_fit* fit, size_t index);
PCRANK_API double pcr_fit_strength(const pcr_fit* fit, size_t index);
PCRANK_API double pcr_fit_lambda(const pcr_fit* fit);
PCRANK_API double pcr_fit_tie_threshold(const pcr_fit* fit);
PCRANK_API double pcr_fit_home_advantage(const pcr_fit* fit);
PCRANK_API pcr_method pcr_fit_method(const pcr_fit* fit);
PCRANK_API void pcr_fit_diagnostics(const pcr_fit* fit, pcr_diagnostics* out);
PCRANK_API const char* pcr_fit_input_digest(const pcr_fit* fit);

PCRANK_API pcr_status pcr_fit_save(const pcr_fit* fit, const char* path);
PCRANK_API pcr_status pcr_fit_load(const char* path, pcr_fit** out);

/* probs receives (away win, draw, home win). Unknown teams get strength 0
 * and set *unknown_team (which may be NULL). */
PCRANK_API pcr_status pcr_fit_predict(const pcr_fit* fit, const char* home,
                                      const char* away, double probs[3],
                                      int* unknown_team);

/* Reads a fixture CSV and writes a prediction CSV; output_path NULL writes
 * to standard output. *unknown_rows (may be NULL) counts flagged rows. */
PCRANK_API pcr_status pcr_predict_csv(const pcr_fit* fit,
                                      const char* fixtures_path,
                                      const char* output_path,
                                      size_t* unknown_rows);

/* ---- evaluation -------------------------------------------------------- */

typedef struct pcr_scores {
  double ls;
  double ls_naive;
  double lss;
  size_t matches;
  size_t unseen;
} pcr_scores;

/* naive is (away win, draw, home win); NULL uses (0.29, 0.25, 0.46).
 * ls_naive is the expected log score of the naive forecast. */
PCRANK_API pcr_status pcr_evaluate(const pcr_fit* fit, const pcr_dataset* test,
                                   const double* naive, pcr_scores* out);
PCRANK_API pcr_status pcr_naive_log_score(const double naive[3], double* out);

/* ---- simulation study -------------------------------------------------- */

typedef struct pcr_study_config {
  const int* teams;
  size_t n_teams;
  const double* lambdas;
  size_t n_lambdas;
  const double* fractions;
  size_t n_fractions;
  int replications;
  const char* dist; /* "normal", "t8", "t3" or "t:<nu>" */
  double tie_threshold;
  double home_advantage;
  const pcr_method* methods;
  size_t n_methods;
  uint64_t seed;
  int threads;
} pcr_study_config;

typedef struct pcr_study_summary {
  int scenario_id;
  int teams;
  double lambda_true;
  double fraction;
  pcr_method method;
  double mean_lss;
  int failures;
} pcr_study_summary;

/* p = 20, lambda = 4, fraction = 0.2, 100 normal replications, home
 * advantage 0.2, no ties, methods peb / peb_adjusted / mle, seed 42. */
PCRANK_API void pcr_study_config_init(pcr_study_config* config);
PCRANK_API pcr_status pcr_study_run(const pcr_study_config* config,
                                    pcr_study** out);
PCRANK_API void pcr_study_free(pcr_study* study);
PCRANK_API size_t pcr_study_row_count(const pcr_study* study);
/* output_path NULL writes to standard output. */
PCRANK_API pcr_status pcr_study_write_csv(const pcr_study* study,
                                          const char* output_path);
PCRANK_API size_t pcr_study_summary_count(const pcr_study* study);
PCRANK_API pcr_status pcr_study_summary_at(const pcr_study* study, size_t index,
                                           pcr_study_summary* out);

#ifdef __cplusplus
}
#endif

#endif /* PCRANK_PCRANK_H_ */
