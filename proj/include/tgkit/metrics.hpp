// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tgkit/answer_parse.hpp"
#include "tgkit/temporal.hpp"

namespace tgkit {

enum class Task { kTSG, kLTR, kTAD, kGTO, kMTR };

inline constexpr Task kAllTasks[] = {Task::kTSG, Task::kLTR, Task::kTAD, Task::kGTO,
                                     Task::kMTR};

const char* TaskName(Task task);
// Accepts the upper-case short names ("TSG", ...). Throws kInvalidArgument.
Task TaskFromName(std::string_view name);

// Sub-metric names in report column order.
const std::vector<std::string>& SubMetricNames(Task task);

inline constexpr double kDefaultHitTolerance = 3.0;

// |pred - gold| <= tol.
bool HitAtT(Timestamp pred, Timestamp gold, Seconds tol = kDefaultHitTolerance);

// Percentage of hits; invalid answers count as misses. Throws kLengthMismatch.
double HitRate(std::span<const ParsedAnswer> preds, std::span<const Timestamp> golds,
               Seconds tol = kDefaultHitTolerance);

// |P n G| / |P u G| on the unions. 0 when p is empty. Throws kMissingGold when
// g is empty.
double TemporalIoU(const IntervalSet& p, const IntervalSet& g);

// 2|P n G| / (|P| + |G|). 0 when p is empty. Throws kMissingGold.
double TemporalF1(const IntervalSet& p, const IntervalSet& g);

// Percentage of valid answers whose letter equals the gold letter.
double McqAccuracy(std::span<const ParsedAnswer> preds, std::span<const char> golds);

struct MeteorParams {
  double alpha = 0.9;
  double beta = 3.0;
  double gamma = 0.5;
};

// Lower-cased alphanumeric runs; apostrophes inside words are kept ("don't").
std::vector<std::string> MeteorTokenize(std::string_view text);

// Porter (1980) suffix-stripping stemmer over lower-case ASCII words. Words
// with other characters are returned unchanged.
std::string PorterStem(std::string_view word);

// Unigram METEOR with an exact stage followed by a Porter-stem stage.
//
// Each stage aligns as many still-unmatched unigrams as possible; among equal
// candidates the one continuing the previous alignment (reference position
// + 1) is taken, then the leftmost. With m matches, a chunk is a maximal run of
// candidate-adjacent matches whose reference positions are also adjacent:
//   P = m/|cand|, R = m/|ref|, Fmean = PR / (alpha P + (1-alpha) R)
//   score = Fmean * (1 - gamma (chunks/m)^beta)
// Throws kEmptyReference when the reference has no tokens.
double Meteor(std::span<const std::string> candidate, std::span<const std::string> reference,
              const MeteorParams& params = {});

// dot(a,t) / (|a||t|) in [-1,1]. Throws kDimensionMismatch, kZeroVector.
double AlignCosine(std::span<const double> audio_emb, std::span<const double> text_emb);

// Nearest one-decimal value, ties upward. Values are treated as the decimals
// they print as, so 28.55 rounds to 28.6 despite its binary representation.
double RoundHalfUp1(double value);

struct TaskScores {
  Task task = Task::kTSG;
  // Sub-metric name -> value on the percent scale.
  std::map<std::string, double> sub_metrics;
  std::size_t n_items = 0;
};

struct MetricsReport {
  std::vector<TaskScores> per_task;  // in kAllTasks order
  std::map<Task, double> task_avgs;
  // Mean over the sub-metrics of every task present (eight when complete).
  double total_avg = 0.0;
  // False when at least one of the five tasks is absent from the total.
  bool complete = false;
};

// Throws kDuplicateTask for a repeated task and kInvalidArgument when a
// TaskScores does not carry exactly its task's sub-metrics.
MetricsReport Aggregate(std::span<const TaskScores> per_task);

}  // namespace tgkit
