// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

// Benchmark item construction from pre-extracted feature tables. All
// generators are deterministic in (inputs, seed).

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tgkit/answer_parse.hpp"
#include "tgkit/error.hpp"
#include "tgkit/metrics.hpp"
#include "tgkit/temporal.hpp"

namespace tgkit {

struct SourceEvent {
  Seconds start = 0.0;
  Seconds end = 0.0;
  double volume = 0.0;
};

// Activity of one source (instrument stem or separated vocals) in one track.
struct SourceActivity {
  std::string track_id;
  std::string source_id;
  std::vector<SourceEvent> events;
  Seconds track_duration = 0.0;

  void Validate() const;
};

struct TransitionEvent {
  Timestamp time;
  std::string description;
  double mood_delta = 0.0;  // arousal change on the -3..3 scale
};

enum class TsgMode { kFirstOnset, kFinalOffset };

const char* TsgModeName(TsgMode mode);  // "onset" / "offset"
TsgMode TsgModeFromName(std::string_view name);

// Timestamp for TSG, option letter for LTR/GTO, reference text for TAD, spans
// for MTR.
using GoldAnswer = std::variant<Timestamp, OptionLetter, std::string, IntervalSet>;

struct QAItem {
  std::string id;
  Task task = Task::kTSG;
  std::string track_id;
  Seconds duration = 0.0;
  std::string question;
  std::vector<std::string> options;  // LTR and GTO only
  GoldAnswer gold;
  std::optional<TsgMode> tsg_mode;  // TSG only
  std::map<std::string, std::string> meta;

  // Throws kSchema when options/gold/mode do not fit the task or an MTR gold
  // has outside 1..4 spans.
  void Validate() const;
};

inline constexpr std::size_t kMaxMtrSpans = 4;

struct GenerationConfig {
  double volume_ratio = 0.5;  // audible iff volume >= ratio * track peak
  std::size_t k_options = 4;
  Seconds min_seg = 10.0;
  double min_separation = 2.0;
  double span_band = 0.5;
};

// ratio * loudest event volume.
double RelativeVolumeThreshold(const SourceActivity& act, double ratio);

// Earliest start (onset) or latest end (offset) among events with
// volume >= threshold. Silent events (volume 0) never count. Throws
// kNoAudibleSpan when none qualifies.
Timestamp TsgLabel(const SourceActivity& act, double volume_threshold, TsgMode mode);

QAItem TsgItem(const SourceActivity& act, double volume_threshold, TsgMode mode);

// The target description plus k_options - 1 distinct descriptions of other
// events from the same track, in seeded order. Throws
// kInsufficientDistractors, kInvalidArgument (bad index or k < 2).
QAItem LtrItem(std::span<const TransitionEvent> events, std::size_t target_index,
               std::size_t k_options, std::uint64_t seed, const std::string& track_id,
               Seconds duration);

// Open-ended description of the change at the target event; gold is its text.
QAItem TadItem(std::span<const TransitionEvent> events, std::size_t target_index,
               const std::string& track_id, Seconds duration);

// Gold letter for label times given in X, Y, Z order. Throws
// kDuplicateTimestamps.
char GtoGoldLetter(const std::array<Timestamp, 3>& times_xyz);

// Item with events already labelled X, Y, Z (in that order).
QAItem GtoItemFromLabels(const std::array<TransitionEvent, 3>& labeled_xyz,
                         const std::string& track_id, Seconds duration);

// Seeded label assignment, then GtoItemFromLabels.
QAItem GtoItem(std::span<const TransitionEvent> three, std::uint64_t seed,
               const std::string& track_id, Seconds duration);

enum class FilterReason { kShortSegment, kLowSeparation };

const char* FilterReasonName(FilterReason reason);

class FilteredOut : public Error {
 public:
  explicit FilteredOut(FilterReason reason)
      : Error(ErrorCode::kFilteredOut, std::string("filtered out: ") + FilterReasonName(reason)),
        reason_(reason) {}

  FilterReason reason() const { return reason_; }

 private:
  FilterReason reason_;
};

struct MtrLabels {
  IntervalSet highest;
  IntervalSet lowest;
  std::vector<Interval> segments;  // boundary partition of [0, duration]
  std::vector<double> levels;      // cumulative mood level per segment
};

// Segments between consecutive boundaries carry the running sum of the
// preceding boundary deltas, the opening segment at 0. Highest (lowest) spans
// are the segments within span_band of the max (min) level, adjacent ones
// merged, capped at kMaxMtrSpans per side by dropping the spans whose best
// level is furthest from the extreme. Throws FilteredOut when the level range
// is below min_separation or a selected segment is shorter than min_seg, and
// kInvalidArgument for fewer than two boundaries or boundaries outside
// (0, duration).
MtrLabels ComputeMtrLabels(std::span<const TransitionEvent> events, Seconds duration,
                           Seconds min_seg, double min_separation, double span_band);

// "highest" and "lowest" questions for one track.
std::vector<QAItem> MtrItems(std::span<const TransitionEvent> events, Seconds duration,
                             const std::string& track_id, const GenerationConfig& cfg);

// Track-level text for a time: "133s", "72.5s".
std::string SecondsLabel(Seconds s);

}  // namespace tgkit
