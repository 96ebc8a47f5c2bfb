// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

// File formats and the evaluation driver. Every file is UTF-8 JSON Lines whose
// first line is a header record {"schema": "<name>", "version": 1}; the field
// reference lives in docs/schema.md.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tgkit/metrics.hpp"
#include "tgkit/objectives.hpp"
#include "tgkit/qagen.hpp"
#include "tgkit/rewards.hpp"
#include "tgkit/sampling.hpp"

namespace tgkit {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kGoldSchema = "tgkit.gold";
inline constexpr std::string_view kPredictionSchema = "tgkit.pred";
inline constexpr std::string_view kFeatureSchema = "tgkit.features";
inline constexpr std::string_view kProfileSchema = "tgkit.profiles";
inline constexpr std::string_view kRewardSchema = "tgkit.rewards";
inline constexpr std::string_view kAllocationSchema = "tgkit.allocations";
inline constexpr std::string_view kReportSchema = "tgkit.report";

struct MetricParams {
  Seconds tolerance = kDefaultHitTolerance;
  MeteorParams meteor;
};

struct ObjectiveParams {
  double dice_smoothing = kDefaultDiceSmoothing;
  Seconds boundary_sigma = kDefaultBoundarySigma;
  double boundary_frame_rate_hz = kDefaultBoundaryFrameRate;
};

struct HarnessConfig {
  RewardConfig reward;
  SamplingConfig sampling;
  MetricParams metrics;
  GenerationConfig generation;
  ObjectiveParams objectives;
  unsigned threads = 0;  // 0: one per hardware thread
};

// Strict JSON config; every section and key is optional, unknown keys are
// schema errors. An empty path yields the defaults.
HarnessConfig ParseConfig(std::string_view json_text);
HarnessConfig LoadConfig(const std::string& path);
std::string ConfigToJson(const HarnessConfig& cfg);

struct PredictionRecord {
  std::string item_id;
  std::string raw_text;
  std::optional<std::vector<double>> audio_emb;
  std::optional<std::vector<double>> text_emb;
};

// Readers throw Error(kSchema) with "<source>:<line>: field '<name>': ..."
// messages; `source` names the input in those messages.
std::vector<QAItem> ParseGoldJsonl(std::string_view text, std::string_view source = "gold");
std::vector<PredictionRecord> ParsePredictionJsonl(std::string_view text,
                                                   std::string_view source = "pred");
std::string GoldToJsonl(std::span<const QAItem> items);
std::string PredictionsToJsonl(std::span<const PredictionRecord> preds);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view content);

// Canonical prediction text for a gold answer (what a perfect model says).
std::string GoldAnswerText(const QAItem& item);

struct ItemResult {
  std::string item_id;
  Task task = Task::kTSG;
  bool has_prediction = false;
  bool format_ok = false;
  bool out_of_range = false;
  std::string parsed;  // canonical form of the parsed answer, "" when invalid
  std::map<std::string, double> scores;
};

struct RunReport {
  MetricsReport metrics;
  std::vector<ItemResult> per_item;  // sorted by item id
  double out_of_range_rate = 0.0;    // over valid TSG/MTR answers
  double format_error_rate = 0.0;    // over all items
  std::size_t missing_predictions = 0;
  std::size_t missing_embeddings = 0;  // TAD items scored align = 0
  Seconds tolerance = kDefaultHitTolerance;
};

// Parses and scores every gold item (optionally only `only_task`), then
// aggregates. Missing predictions count as format errors. Throws
// kDuplicatePrediction, kUnknownItem, kSchema (duplicate gold ids).
RunReport EvaluateRun(std::span<const QAItem> gold, std::span<const PredictionRecord> preds,
                      const HarnessConfig& cfg, std::optional<Task> only_task = std::nullopt);

RunReport EvaluateRunFiles(const std::string& gold_path, const std::string& pred_path,
                           const std::string& config_path,
                           std::optional<Task> only_task = std::nullopt);

struct OutOfRangeStats {
  double fraction = 0.0;
  std::size_t considered = 0;
  std::vector<std::pair<std::string, bool>> flags;  // item id, out of range
};

// Recomputes, from the parsed answers in `report`, which valid TSG/MTR answers
// place any time beyond the gold item's duration.
OutOfRangeStats ComputeOutOfRangeStats(const RunReport& report, std::span<const QAItem> gold);

// Centered moving average; the window keeps (window-1)/2 samples on the left
// and window/2 on the right and shrinks at the ends. Throws kInvalidArgument
// for window 0.
std::vector<double> SlidingMean(std::span<const double> series, std::size_t window);

std::string RunReportToJson(const RunReport& report);
RunReport RunReportFromJson(std::string_view json_text);

// Table with the benchmark's column layout, one decimal, ties rounded up.
std::string RenderTable(const MetricsReport& metrics, Seconds tolerance,
                        std::string_view row_label = "model");

struct RewardRecord {
  std::string item_id;
  Task task = Task::kTSG;
  double reward = 0.0;
  bool format_ok = false;
  bool out_of_range = false;
};

// One reward per prediction record on a TSG or MTR item; a prediction file
// may hold several rollouts per item. Records for other tasks are skipped.
// Throws kUnknownItem.
std::vector<RewardRecord> ComputeRewards(std::span<const QAItem> gold,
                                         std::span<const PredictionRecord> rollouts,
                                         const RewardConfig& cfg);
std::string RewardsToJsonl(std::span<const RewardRecord> rewards);

struct NamedProfile {
  std::string id;
  TransitionProfile profile;
};

std::vector<NamedProfile> ParseProfileJsonl(std::string_view text,
                                            std::string_view source = "profiles");

struct Allocation {
  std::string id;
  std::int64_t budget = 0;
  std::vector<std::size_t> indices;
};

// Budget per profile: TokenBudget(duration) capped at the frame count, unless
// budget_override > 0.
std::vector<Allocation> AllocateProfiles(std::span<const NamedProfile> profiles,
                                         const SamplingConfig& cfg,
                                         std::int64_t budget_override = 0);
std::string AllocationsToJsonl(std::span<const Allocation> allocations);

struct FeatureTables {
  std::vector<SourceActivity> sources;
  struct Transitions {
    std::string track_id;
    Seconds duration = 0.0;
    std::vector<TransitionEvent> events;
  };
  std::vector<Transitions> transitions;
};

FeatureTables ParseFeatureJsonl(std::string_view text, std::string_view source = "features");

struct GenerationStats {
  std::map<std::string, std::size_t> skipped;  // reason -> count
};

// Items ordered by track id, then task, then id.
std::vector<QAItem> GenerateQa(const FeatureTables& features, const GenerationConfig& cfg,
                               std::uint64_t seed, GenerationStats* stats = nullptr);

}  // namespace tgkit
