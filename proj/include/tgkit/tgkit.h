/* Copyright 2026 The tgkit Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to tgkit. Every fallible call returns a tgk_status; on failure
 * tgk_last_error_message() describes the error for the calling thread until
 * its next tgk_* call. Strings returned through char** are owned by the caller
 * and released with tgk_string_free.
 */

#ifndef TGKIT_TGKIT_H_
#define TGKIT_TGKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TGK_API __declspec(dllexport)
#else
#define TGK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tgk_status {
  TGK_OK = 0,
  TGK_INVALID_ARGUMENT = 1,
  TGK_CONSTRUCTION = 2,
  TGK_MISSING_GOLD = 3,
  TGK_LENGTH_MISMATCH = 4,
  TGK_DIMENSION_MISMATCH = 5,
  TGK_ZERO_VECTOR = 6,
  TGK_EMPTY_REFERENCE = 7,
  TGK_DUPLICATE_TASK = 8,
  TGK_TOO_SHORT = 9,
  TGK_EMPTY_ANSWER_MASK = 10,
  TGK_ODD_DIMENSION = 11,
  TGK_BUDGET_EXCEEDS_FRAMES = 12,
  TGK_NO_AUDIBLE_SPAN = 13,
  TGK_INSUFFICIENT_DISTRACTORS = 14,
  TGK_DUPLICATE_TIMESTAMPS = 15,
  TGK_FILTERED_OUT = 16,
  TGK_SCHEMA = 17,
  TGK_DUPLICATE_PREDICTION = 18,
  TGK_UNKNOWN_ITEM = 19,
  TGK_IO = 20,
  TGK_INTERNAL = 99
} tgk_status;

/* Task selectors; TGK_TASK_ALL evaluates every task present. */
enum {
  TGK_TASK_ALL = -1,
  TGK_TASK_TSG = 0,
  TGK_TASK_LTR = 1,
  TGK_TASK_TAD = 2,
  TGK_TASK_GTO = 3,
  TGK_TASK_MTR = 4
};

typedef struct tgk_config tgk_config;
typedef struct tgk_report tgk_report;

TGK_API const char* tgk_version(void);
TGK_API const char* tgk_status_name(tgk_status status);
TGK_API const char* tgk_last_error_message(void);
TGK_API void tgk_string_free(char* s);

/* Task name ("TSG", ...) to selector; TGK_INVALID_ARGUMENT when unknown. */
TGK_API tgk_status tgk_task_from_name(const char* name, int* out);

/* NULL or "" path yields the defaults. */
TGK_API tgk_status tgk_config_load(const char* path, tgk_config** out);
TGK_API tgk_status tgk_config_set_tolerance(tgk_config* cfg, double seconds);
TGK_API tgk_status tgk_config_set_threads(tgk_config* cfg, unsigned threads);
TGK_API tgk_status tgk_config_to_json(const tgk_config* cfg, char** out);
TGK_API void tgk_config_free(tgk_config* cfg);

/* A NULL config means defaults. */
TGK_API tgk_status tgk_evaluate_files(const char* gold_path, const char* pred_path,
                                      const tgk_config* cfg, int task, tgk_report** out);
TGK_API tgk_status tgk_evaluate_strings(const char* gold_jsonl, const char* pred_jsonl,
                                        const tgk_config* cfg, int task, tgk_report** out);
TGK_API tgk_status tgk_report_from_json(const char* json, tgk_report** out);
TGK_API tgk_status tgk_report_to_json(const tgk_report* report, char** out);
TGK_API tgk_status tgk_report_to_table(const tgk_report* report, const char* row_label,
                                       char** out);
TGK_API tgk_status tgk_report_total(const tgk_report* report, double* total, int* complete);
/* TGK_INVALID_ARGUMENT when the task is absent from the report. */
TGK_API tgk_status tgk_report_task_avg(const tgk_report* report, int task, double* out);
TGK_API tgk_status tgk_report_sub_metric(const tgk_report* report, int task, const char* name,
                                         double* out);
TGK_API tgk_status tgk_report_rates(const tgk_report* report, double* format_error_rate,
                                    double* out_of_range_rate);
TGK_API tgk_status tgk_report_item_count(const tgk_report* report, size_t* out);
TGK_API void tgk_report_free(tgk_report* report);

/* Batch operations over files; results come back as JSONL text. */
TGK_API tgk_status tgk_compute_rewards(const char* gold_path, const char* rollouts_path,
                                       const tgk_config* cfg, char** out_jsonl);
/* budget_override <= 0 uses the duration-derived budget. */
TGK_API tgk_status tgk_sample_profiles(const char* profiles_path, const tgk_config* cfg,
                                       int64_t budget_override, char** out_jsonl);
/* out_stats_json may be NULL. */
TGK_API tgk_status tgk_generate_qa(const char* features_path, const tgk_config* cfg,
                                   uint64_t seed, char** out_jsonl, char** out_stats_json);

/* Scalar helpers. Interval sets are flat arrays of n (start, end) pairs. */
TGK_API tgk_status tgk_sliding_mean(const double* series, size_t n, size_t window, double* out);
TGK_API tgk_status tgk_temporal_iou(const double* pred, size_t n_pred, const double* gold,
                                    size_t n_gold, double* out);
TGK_API tgk_status tgk_temporal_f1(const double* pred, size_t n_pred, const double* gold,
                                   size_t n_gold, double* out);
TGK_API tgk_status tgk_tsg_reward(const char* text, double gold, double duration,
                                  const tgk_config* cfg, double* out);
TGK_API tgk_status tgk_mtr_reward(const char* text, const double* gold, size_t n_gold,
                                  double duration, const tgk_config* cfg, double* out);

#ifdef __cplusplus
}
#endif

#endif /* TGKIT_TGKIT_H_ */
