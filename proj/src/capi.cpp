// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "tgkit/harness.hpp"
#include "tgkit/tgkit.h"

struct tgk_config {
  tgkit::HarnessConfig cfg;
};

struct tgk_report {
  tgkit::RunReport report;
};

namespace {

using tgkit::ErrorCode;

static_assert(static_cast<int>(ErrorCode::kInvalidArgument) == TGK_INVALID_ARGUMENT);
static_assert(static_cast<int>(ErrorCode::kSchema) == TGK_SCHEMA);
static_assert(static_cast<int>(ErrorCode::kIo) == TGK_IO);

thread_local std::string g_last_error;

tgk_status Fail(tgk_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

template <typename F>
tgk_status Guard(F&& fn) {
  g_last_error.clear();
  try {
    fn();
    return TGK_OK;
  } catch (const tgkit::Error& e) {
    return Fail(static_cast<tgk_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(TGK_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(TGK_INTERNAL, e.what());
  }
}

void Require(const void* p, const char* what) {
  if (p == nullptr) {
    throw tgkit::Error(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
  }
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const tgkit::HarnessConfig& ConfigOf(const tgk_config* cfg) {
  static const tgkit::HarnessConfig kDefaults;
  return cfg ? cfg->cfg : kDefaults;
}

std::optional<tgkit::Task> TaskOf(int task) {
  if (task == TGK_TASK_ALL) return std::nullopt;
  if (task < TGK_TASK_TSG || task > TGK_TASK_MTR) {
    throw tgkit::Error(ErrorCode::kInvalidArgument, "unknown task selector");
  }
  return static_cast<tgkit::Task>(task);
}

tgkit::IntervalSet SpansOf(const double* flat, std::size_t n) {
  if (n > 0) Require(flat, "interval array");
  std::vector<tgkit::Interval> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(flat[2 * i], flat[2 * i + 1]);
  return tgkit::IntervalSet(std::move(v));
}

}  // namespace

extern "C" {

const char* tgk_version(void) { return "1.0.0"; }

const char* tgk_status_name(tgk_status status) {
  if (status == TGK_OK) return "ok";
  if (status == TGK_INTERNAL) return "internal";
  if (status >= TGK_INVALID_ARGUMENT && status <= TGK_IO) {
    return tgkit::ErrorCodeName(static_cast<ErrorCode>(status));
  }
  return "unknown";
}

const char* tgk_last_error_message(void) { return g_last_error.c_str(); }

void tgk_string_free(char* s) { std::free(s); }

tgk_status tgk_task_from_name(const char* name, int* out) {
  return Guard([&] {
    Require(name, "name");
    Require(out, "out");
    *out = static_cast<int>(tgkit::TaskFromName(name));
  });
}

tgk_status tgk_config_load(const char* path, tgk_config** out) {
  return Guard([&] {
    Require(out, "out");
    auto* c = new tgk_config{tgkit::LoadConfig(path ? path : "")};
    *out = c;
  });
}

tgk_status tgk_config_set_tolerance(tgk_config* cfg, double seconds) {
  return Guard([&] {
    Require(cfg, "cfg");
    if (!(seconds > 0.0)) throw tgkit::Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
    cfg->cfg.metrics.tolerance = seconds;
  });
}

tgk_status tgk_config_set_threads(tgk_config* cfg, unsigned threads) {
  return Guard([&] {
    Require(cfg, "cfg");
    cfg->cfg.threads = threads;
  });
}

tgk_status tgk_config_to_json(const tgk_config* cfg, char** out) {
  return Guard([&] {
    Require(out, "out");
    *out = Dup(tgkit::ConfigToJson(ConfigOf(cfg)));
  });
}

void tgk_config_free(tgk_config* cfg) { delete cfg; }

tgk_status tgk_evaluate_files(const char* gold_path, const char* pred_path,
                              const tgk_config* cfg, int task, tgk_report** out) {
  return Guard([&] {
    Require(gold_path, "gold_path");
    Require(pred_path, "pred_path");
    Require(out, "out");
    const auto gold = tgkit::ParseGoldJsonl(tgkit::ReadTextFile(gold_path), gold_path);
    const auto preds = tgkit::ParsePredictionJsonl(tgkit::ReadTextFile(pred_path), pred_path);
    *out = new tgk_report{tgkit::EvaluateRun(gold, preds, ConfigOf(cfg), TaskOf(task))};
  });
}

tgk_status tgk_evaluate_strings(const char* gold_jsonl, const char* pred_jsonl,
                                const tgk_config* cfg, int task, tgk_report** out) {
  return Guard([&] {
    Require(gold_jsonl, "gold_jsonl");
    Require(pred_jsonl, "pred_jsonl");
    Require(out, "out");
    const auto gold = tgkit::ParseGoldJsonl(gold_jsonl);
    const auto preds = tgkit::ParsePredictionJsonl(pred_jsonl);
    *out = new tgk_report{tgkit::EvaluateRun(gold, preds, ConfigOf(cfg), TaskOf(task))};
  });
}

tgk_status tgk_report_from_json(const char* json, tgk_report** out) {
  return Guard([&] {
    Require(json, "json");
    Require(out, "out");
    *out = new tgk_report{tgkit::RunReportFromJson(json)};
  });
}

tgk_status tgk_report_to_json(const tgk_report* report, char** out) {
  return Guard([&] {
    Require(report, "report");
    Require(out, "out");
    *out = Dup(tgkit::RunReportToJson(report->report));
  });
}

tgk_status tgk_report_to_table(const tgk_report* report, const char* row_label, char** out) {
  return Guard([&] {
    Require(report, "report");
    Require(out, "out");
    *out = Dup(tgkit::RenderTable(report->report.metrics, report->report.tolerance,
                                  row_label ? row_label : "model"));
  });
}

tgk_status tgk_report_total(const tgk_report* report, double* total, int* complete) {
  return Guard([&] {
    Require(report, "report");
    if (total) *total = report->report.metrics.total_avg;
    if (complete) *complete = report->report.metrics.complete ? 1 : 0;
  });
}

tgk_status tgk_report_task_avg(const tgk_report* report, int task, double* out) {
  return Guard([&] {
    Require(report, "report");
    Require(out, "out");
    const auto t = TaskOf(task);
    if (!t) throw tgkit::Error(ErrorCode::kInvalidArgument, "task selector required");
    const auto& avgs = report->report.metrics.task_avgs;
    auto it = avgs.find(*t);
    if (it == avgs.end()) {
      throw tgkit::Error(ErrorCode::kInvalidArgument,
                         std::string("task ") + tgkit::TaskName(*t) + " not in report");
    }
    *out = it->second;
  });
}

tgk_status tgk_report_sub_metric(const tgk_report* report, int task, const char* name,
                                 double* out) {
  return Guard([&] {
    Require(report, "report");
    Require(name, "name");
    Require(out, "out");
    const auto t = TaskOf(task);
    if (!t) throw tgkit::Error(ErrorCode::kInvalidArgument, "task selector required");
    for (const auto& ts : report->report.metrics.per_task) {
      if (ts.task != *t) continue;
      auto it = ts.sub_metrics.find(name);
      if (it == ts.sub_metrics.end()) break;
      *out = it->second;
      return;
    }
    throw tgkit::Error(ErrorCode::kInvalidArgument,
                       std::string("no sub-metric '") + name + "' for " + tgkit::TaskName(*t));
  });
}

tgk_status tgk_report_rates(const tgk_report* report, double* format_error_rate,
                            double* out_of_range_rate) {
  return Guard([&] {
    Require(report, "report");
    if (format_error_rate) *format_error_rate = report->report.format_error_rate;
    if (out_of_range_rate) *out_of_range_rate = report->report.out_of_range_rate;
  });
}

tgk_status tgk_report_item_count(const tgk_report* report, size_t* out) {
  return Guard([&] {
    Require(report, "report");
    Require(out, "out");
    *out = report->report.per_item.size();
  });
}

void tgk_report_free(tgk_report* report) { delete report; }

tgk_status tgk_compute_rewards(const char* gold_path, const char* rollouts_path,
                               const tgk_config* cfg, char** out_jsonl) {
  return Guard([&] {
    Require(gold_path, "gold_path");
    Require(rollouts_path, "rollouts_path");
    Require(out_jsonl, "out_jsonl");
    const auto gold = tgkit::ParseGoldJsonl(tgkit::ReadTextFile(gold_path), gold_path);
    const auto rollouts =
        tgkit::ParsePredictionJsonl(tgkit::ReadTextFile(rollouts_path), rollouts_path);
    const auto rewards = tgkit::ComputeRewards(gold, rollouts, ConfigOf(cfg).reward);
    *out_jsonl = Dup(tgkit::RewardsToJsonl(rewards));
  });
}

tgk_status tgk_sample_profiles(const char* profiles_path, const tgk_config* cfg,
                               int64_t budget_override, char** out_jsonl) {
  return Guard([&] {
    Require(profiles_path, "profiles_path");
    Require(out_jsonl, "out_jsonl");
    const auto profiles =
        tgkit::ParseProfileJsonl(tgkit::ReadTextFile(profiles_path), profiles_path);
    const auto alloc = tgkit::AllocateProfiles(profiles, ConfigOf(cfg).sampling, budget_override);
    *out_jsonl = Dup(tgkit::AllocationsToJsonl(alloc));
  });
}

tgk_status tgk_generate_qa(const char* features_path, const tgk_config* cfg, uint64_t seed,
                           char** out_jsonl, char** out_stats_json) {
  return Guard([&] {
    Require(features_path, "features_path");
    Require(out_jsonl, "out_jsonl");
    const auto features =
        tgkit::ParseFeatureJsonl(tgkit::ReadTextFile(features_path), features_path);
    tgkit::GenerationStats stats;
    const auto items = tgkit::GenerateQa(features, ConfigOf(cfg).generation, seed, &stats);
    std::string jsonl = tgkit::GoldToJsonl(items);
    std::string stats_json;
    if (out_stats_json) {
      nlohmann::json j = {{"items", items.size()}, {"skipped", stats.skipped}};
      stats_json = j.dump();
    }
    *out_jsonl = Dup(jsonl);
    if (out_stats_json) *out_stats_json = Dup(stats_json);
  });
}

tgk_status tgk_sliding_mean(const double* series, size_t n, size_t window, double* out) {
  return Guard([&] {
    if (n > 0) {
      Require(series, "series");
      Require(out, "out");
    }
    const auto r = tgkit::SlidingMean(std::span<const double>(series, n), window);
    std::copy(r.begin(), r.end(), out);
  });
}

tgk_status tgk_temporal_iou(const double* pred, size_t n_pred, const double* gold,
                            size_t n_gold, double* out) {
  return Guard([&] {
    Require(out, "out");
    *out = tgkit::TemporalIoU(SpansOf(pred, n_pred), SpansOf(gold, n_gold));
  });
}

tgk_status tgk_temporal_f1(const double* pred, size_t n_pred, const double* gold, size_t n_gold,
                           double* out) {
  return Guard([&] {
    Require(out, "out");
    *out = tgkit::TemporalF1(SpansOf(pred, n_pred), SpansOf(gold, n_gold));
  });
}

tgk_status tgk_tsg_reward(const char* text, double gold, double duration,
                          const tgk_config* cfg, double* out) {
  return Guard([&] {
    Require(text, "text");
    Require(out, "out");
    *out = tgkit::TsgReward(tgkit::ParseTimestamp(text), tgkit::Timestamp(gold), duration,
                            ConfigOf(cfg).reward);
  });
}

tgk_status tgk_mtr_reward(const char* text, const double* gold, size_t n_gold, double duration,
                          const tgk_config* cfg, double* out) {
  return Guard([&] {
    Require(text, "text");
    Require(out, "out");
    *out = tgkit::MtrReward(tgkit::ParseIntervalList(text), SpansOf(gold, n_gold), duration,
                            ConfigOf(cfg).reward);
  });
}

}  // extern "C"
