// Copyright 2026 The currikit Authors
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

/* C interface to the currikit curriculum toolkit.
 *
 * Every function returns a ck_status. On failure, ck_last_error() returns a
 * thread-local description of the most recent error on the calling thread.
 * Handles are opaque; release them with the matching *_free function.
 */
#ifndef CURRIKIT_CURRIKIT_H
#define CURRIKIT_CURRIKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CK_API __declspec(dllexport)
#elif defined(__GNUC__)
#define CK_API __attribute__((visibility("default")))
#else
#define CK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ck_status {
  CK_OK = 0,
  CK_ERR_INVALID_ARGUMENT = 1,
  CK_ERR_IO = 2,
  CK_ERR_MALFORMED = 3,     /* unparseable or out-of-range input record */
  CK_ERR_VALIDATION = 4,    /* corpus failed validation */
  CK_ERR_MISSING_SOURCE = 5,
  CK_ERR_MISSING_METRIC = 6,
  CK_ERR_UNKNOWN_ID = 7,
  CK_ERR_UNKNOWN_STRATEGY = 8,
  CK_ERR_CORPUS_TOO_SMALL = 9,
  CK_ERR_SAMPLE_TOO_LARGE = 10,
  CK_ERR_INTERNAL = 11
} ck_status;

typedef enum ck_strategy {
  CK_STRATEGY_FCL = 0,
  CK_STRATEGY_RCL = 1,
  CK_STRATEGY_SGC = 2,
  CK_STRATEGY_GFC = 3,
  CK_STRATEGY_GRC = 4,
  CK_STRATEGY_SHUF = 5
} ck_strategy;

typedef enum ck_tier { CK_TIER_LOW = 0, CK_TIER_MEDIUM = 1, CK_TIER_HIGH = 2 } ck_tier;

typedef enum ck_tier_rule { CK_TIER_RULE_EQUAL = 0, CK_TIER_RULE_QUANTILE = 1 } ck_tier_rule;

typedef struct ck_corpus ck_corpus;
typedef struct ck_scores ck_scores;
typedef struct ck_plan ck_plan;

typedef struct ck_corpus_config {
  const char* problems_path;    /* required */
  const char* traces_path;      /* optional, may be NULL */
  const char* annotations_path; /* optional, may be NULL */
  int k_completions;            /* <= 0 selects the default of 20 */
  int k_topk;                   /* <= 0 selects the default of 5 */
  double temperature;           /* <= 0 selects the default of 0.7 */
} ck_corpus_config;

typedef struct ck_plan_config {
  ck_strategy strategy;
  const char* metric; /* NULL or "" allowed only for CK_STRATEGY_SHUF */
  uint64_t seed;
  ck_tier tier; /* used by CK_STRATEGY_SGC */
  ck_tier_rule tier_rule;
} ck_plan_config;

CK_API const char* ck_version(void);
CK_API const char* ck_status_name(ck_status status);
CK_API const char* ck_last_error(void);

CK_API void ck_corpus_config_init(ck_corpus_config* config);
CK_API void ck_plan_config_init(ck_plan_config* config);

/* Loads problems plus optional traces and annotations. Malformed records do
 * not fail the load; they surface through ck_corpus_validate. */
CK_API ck_status ck_corpus_open(const ck_corpus_config* config, ck_corpus** out);
CK_API void ck_corpus_free(ck_corpus* corpus);
CK_API size_t ck_corpus_problem_count(const ck_corpus* corpus);

/* Writes a JSON validation report to report_path (may be NULL). Returns
 * CK_OK when there are no violations, CK_ERR_VALIDATION otherwise. */
CK_API ck_status ck_corpus_validate(const ck_corpus* corpus, int permissive,
                                    const char* report_path, size_t* violations,
                                    size_t* warnings);

/* metrics_csv: comma-separated metric names, NULL or "" for every metric the
 * loaded inputs support. threads: 0 means hardware concurrency. Fails with
 * CK_ERR_VALIDATION when the corpus has violations (K mismatches are
 * tolerated when permissive is non-zero). */
CK_API ck_status ck_score(const ck_corpus* corpus, const char* metrics_csv, unsigned threads,
                          int permissive, ck_scores** out);

/* Writes scores.jsonl, score_provenance.jsonl and manifest.json into out_dir. */
CK_API ck_status ck_scores_write(const ck_scores* scores, const ck_corpus* corpus,
                                 const char* out_dir);
CK_API ck_status ck_scores_read(const char* scores_path, ck_scores** out);
CK_API void ck_scores_free(ck_scores* scores);
CK_API size_t ck_scores_count(const ck_scores* scores);
/* Value of `metric` for the score at `index`; returns 0 with *present = 0
 * when the metric is null. */
CK_API ck_status ck_scores_get(const ck_scores* scores, size_t index, const char* metric,
                               double* value, int* present);
CK_API const char* ck_scores_problem_id(const ck_scores* scores, size_t index);

CK_API ck_status ck_plan_build(const ck_scores* scores, const ck_plan_config* config,
                               ck_plan** out);
CK_API void ck_plan_free(ck_plan* plan);
CK_API size_t ck_plan_size(const ck_plan* plan);
CK_API const char* ck_plan_id_at(const ck_plan* plan, size_t index);

/* Writes ordered_train.jsonl and plan.json into out_dir. scores_path is only
 * digested for the manifest and may be NULL. repeat of 0 is treated as 1. */
CK_API ck_status ck_plan_emit(const ck_plan* plan, const char* problems_path,
                              const char* scores_path, const char* out_dir, unsigned repeat);

/* Writes the tier partition for `metric` as JSON. */
CK_API ck_status ck_tiers_write(const ck_scores* scores, const char* metric,
                                ck_tier_rule rule, const char* path);

/* Writes the sampled per-metric means as JSON. */
CK_API ck_status ck_report_write(const ck_scores* scores, size_t sample_size, uint64_t seed,
                                 const char* path);

#ifdef __cplusplus
}
#endif

#endif /* CURRIKIT_CURRIKIT_H */
