// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "tgkit/qagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "tgkit/rng.hpp"

namespace tgkit {

void SourceActivity::Validate() const {
  if (!(track_duration > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "track duration must be positive");
  }
  for (const SourceEvent& e : events) {
    if (!(e.start >= 0.0 && e.start < e.end && e.end <= track_duration) || !(e.volume >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "source event outside track or with start >= end in " + track_id);
    }
  }
}

const char* TsgModeName(TsgMode mode) {
  return mode == TsgMode::kFirstOnset ? "onset" : "offset";
}

TsgMode TsgModeFromName(std::string_view name) {
  if (name == "onset") return TsgMode::kFirstOnset;
  if (name == "offset") return TsgMode::kFinalOffset;
  throw Error(ErrorCode::kInvalidArgument, "unknown TSG mode '" + std::string(name) + "'");
}

void QAItem::Validate() const {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kSchema, "item " + id + ": " + what);
  };
  if (!(duration > 0.0)) fail("duration must be positive");
  const bool wants_options = task == Task::kLTR || task == Task::kGTO;
  if (wants_options == options.empty()) {
    fail(wants_options ? "options required" : "options only allowed for LTR/GTO");
  }
  if ((task == Task::kTSG) != tsg_mode.has_value()) fail("TSG items need exactly one mode");
  switch (task) {
    case Task::kTSG:
      if (!std::holds_alternative<Timestamp>(gold)) fail("TSG gold must be a timestamp");
      break;
    case Task::kLTR:
    case Task::kGTO: {
      const auto* l = std::get_if<OptionLetter>(&gold);
      if (l == nullptr) fail("gold must be an option letter");
      if (static_cast<std::size_t>(l->letter - 'A') >= options.size()) {
        fail("gold letter outside options");
      }
      break;
    }
    case Task::kTAD:
      if (!std::holds_alternative<std::string>(gold)) fail("TAD gold must be text");
      break;
    case Task::kMTR: {
      const auto* s = std::get_if<IntervalSet>(&gold);
      if (s == nullptr) fail("MTR gold must be intervals");
      if (s->empty() || s->size() > kMaxMtrSpans) fail("MTR gold needs 1-4 spans");
      break;
    }
  }
}

std::string SecondsLabel(Seconds s) {
  return FormatSeconds(s) + "s";
}

double RelativeVolumeThreshold(const SourceActivity& act, double ratio) {
  double peak = 0.0;
  for (const SourceEvent& e : act.events) peak = std::max(peak, e.volume);
  return ratio * peak;
}

Timestamp TsgLabel(const SourceActivity& act, double volume_threshold, TsgMode mode) {
  act.Validate();
  std::optional<Seconds> best;
  for (const SourceEvent& e : act.events) {
    if (e.volume < volume_threshold || !(e.volume > 0.0)) continue;
    if (mode == TsgMode::kFirstOnset) {
      best = best ? std::min(*best, e.start) : e.start;
    } else {
      best = best ? std::max(*best, e.end) : e.end;
    }
  }
  if (!best) {
    throw Error(ErrorCode::kNoAudibleSpan,
                "no span of " + act.source_id + " in " + act.track_id + " is loud enough");
  }
  return Timestamp(*best);
}

QAItem TsgItem(const SourceActivity& act, double volume_threshold, TsgMode mode) {
  QAItem item;
  item.gold = TsgLabel(act, volume_threshold, mode);
  item.task = Task::kTSG;
  item.track_id = act.track_id;
  item.duration = act.track_duration;
  item.tsg_mode = mode;
  item.id = act.track_id + "-tsg-" + TsgModeName(mode) + "-" + act.source_id;
  item.question = mode == TsgMode::kFirstOnset
                      ? "At what time does the " + act.source_id +
                            " first become audible? Answer with the time in seconds."
                      : "At what time is the " + act.source_id +
                            " last audible? Answer with the time in seconds.";
  item.meta["source_id"] = act.source_id;
  return item;
}

namespace {

void CheckTarget(std::span<const TransitionEvent> events, std::size_t target_index) {
  if (target_index >= events.size()) {
    throw Error(ErrorCode::kInvalidArgument, "target index out of range");
  }
}

}  // namespace

QAItem LtrItem(std::span<const TransitionEvent> events, std::size_t target_index,
               std::size_t k_options, std::uint64_t seed, const std::string& track_id,
               Seconds duration) {
  CheckTarget(events, target_index);
  if (k_options < 2 || k_options > 6) {
    throw Error(ErrorCode::kInvalidArgument, "k_options must be in 2..6");
  }
  const TransitionEvent& target = events[target_index];
  std::vector<std::string> pool;
  std::set<std::string> seen = {target.description};
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i == target_index) continue;
    if (seen.insert(events[i].description).second) pool.push_back(events[i].description);
  }
  if (pool.size() < k_options - 1) {
    throw Error(ErrorCode::kInsufficientDistractors,
                "track " + track_id + " has " + std::to_string(pool.size()) +
                    " distinct distractors, need " + std::to_string(k_options - 1));
  }
  Rng rng(seed);
  rng.Shuffle(pool);
  std::vector<std::string> options(pool.begin(),
                                   pool.begin() + static_cast<std::ptrdiff_t>(k_options - 1));
  options.push_back(target.description);
  rng.Shuffle(options);
  const auto pos = static_cast<std::size_t>(
      std::find(options.begin(), options.end(), target.description) - options.begin());

  QAItem item;
  item.task = Task::kLTR;
  item.track_id = track_id;
  item.duration = duration;
  item.id = track_id + "-ltr-" + std::to_string(target_index);
  item.question = "Which description best matches the musical change at " +
                  SecondsLabel(target.time.seconds()) + "?";
  item.options = std::move(options);
  item.gold = OptionLetter{static_cast<char>('A' + pos)};
  item.meta["target_time"] = FormatTimestamp(target.time);
  return item;
}

QAItem TadItem(std::span<const TransitionEvent> events, std::size_t target_index,
               const std::string& track_id, Seconds duration) {
  CheckTarget(events, target_index);
  const TransitionEvent& target = events[target_index];
  QAItem item;
  item.task = Task::kTAD;
  item.track_id = track_id;
  item.duration = duration;
  item.id = track_id + "-tad-" + std::to_string(target_index);
  item.question = "Describe the musical change that happens around " +
                  SecondsLabel(target.time.seconds()) + ".";
  item.gold = target.description;
  item.meta["target_time"] = FormatTimestamp(target.time);
  return item;
}

char GtoGoldLetter(const std::array<Timestamp, 3>& times_xyz) {
  if (times_xyz[0] == times_xyz[1] || times_xyz[0] == times_xyz[2] ||
      times_xyz[1] == times_xyz[2]) {
    throw Error(ErrorCode::kDuplicateTimestamps, "GTO events need distinct timestamps");
  }
  std::array<std::size_t, 3> idx = {0, 1, 2};
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return times_xyz[a] < times_xyz[b]; });
  const LabelOrder order = {static_cast<char>('X' + idx[0]), static_cast<char>('X' + idx[1]),
                            static_cast<char>('X' + idx[2])};
  return *GtoLetterFor(order);
}

QAItem GtoItemFromLabels(const std::array<TransitionEvent, 3>& labeled_xyz,
                         const std::string& track_id, Seconds duration) {
  const char gold = GtoGoldLetter(
      {labeled_xyz[0].time, labeled_xyz[1].time, labeled_xyz[2].time});
  QAItem item;
  item.task = Task::kGTO;
  item.track_id = track_id;
  item.duration = duration;
  item.id = track_id + "-gto";
  std::string q =
      "Three transitions from this track are described below as X, Y and Z.\n";
  for (std::size_t i = 0; i < 3; ++i) {
    q += "(" + std::string(1, static_cast<char>('X' + i)) + ") " + labeled_xyz[i].description +
         "\n";
    item.meta[std::string("time_") + static_cast<char>('X' + i)] =
        FormatTimestamp(labeled_xyz[i].time);
  }
  q += "Which option lists them in the order they occur in the track?";
  item.question = std::move(q);
  for (const LabelOrder& order : GtoOptionTable()) {
    item.options.push_back(std::string(1, order[0]) + " \xE2\x86\x92 " + order[1] +
                           " \xE2\x86\x92 " + order[2]);
  }
  item.gold = OptionLetter{gold};
  return item;
}

QAItem GtoItem(std::span<const TransitionEvent> three, std::uint64_t seed,
               const std::string& track_id, Seconds duration) {
  if (three.size() != 3) throw Error(ErrorCode::kInvalidArgument, "GTO needs three events");
  std::vector<std::size_t> perm = {0, 1, 2};
  Rng rng(seed);
  rng.Shuffle(perm);
  return GtoItemFromLabels({three[perm[0]], three[perm[1]], three[perm[2]]}, track_id,
                           duration);
}

const char* FilterReasonName(FilterReason reason) {
  return reason == FilterReason::kShortSegment ? "short_segment" : "low_separation";
}

namespace {

struct Span {
  Interval interval;
  double margin;
  std::size_t order;
};

// Merges runs of adjacent selected segments; margin is the best distance of a
// member level past the band threshold.
IntervalSet SelectSpans(const std::vector<Interval>& segments, const std::vector<bool>& selected,
                        const std::vector<double>& margins) {
  std::vector<Span> spans;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (!selected[i]) continue;
    if (!spans.empty() && i > 0 && selected[i - 1]) {
      Span& last = spans.back();
      last.interval = Interval(last.interval.start(), segments[i].end());
      last.margin = std::max(last.margin, margins[i]);
    } else {
      spans.push_back({segments[i], margins[i], spans.size()});
    }
  }
  if (spans.size() > kMaxMtrSpans) {
    std::stable_sort(spans.begin(), spans.end(),
                     [](const Span& a, const Span& b) { return a.margin > b.margin; });
    spans.erase(spans.begin() + kMaxMtrSpans, spans.end());
    std::sort(spans.begin(), spans.end(),
              [](const Span& a, const Span& b) { return a.order < b.order; });
  }
  std::vector<Interval> out;
  for (const Span& s : spans) out.push_back(s.interval);
  return IntervalSet(std::move(out));
}

}  // namespace

MtrLabels ComputeMtrLabels(std::span<const TransitionEvent> events, Seconds duration,
                           Seconds min_seg, double min_separation, double span_band) {
  if (events.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "mood trajectory needs at least two boundaries");
  }
  std::vector<TransitionEvent> sorted(events.begin(), events.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const TransitionEvent& a, const TransitionEvent& b) {
                     return a.time < b.time;
                   });
  MtrLabels out;
  Seconds prev = 0.0;
  double level = 0.0;
  for (const TransitionEvent& e : sorted) {
    const Seconds t = e.time.seconds();
    if (!(t > prev) || !(t < duration)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "boundaries must be distinct and inside (0, duration)");
    }
    out.segments.emplace_back(prev, t);
    out.levels.push_back(level);
    level += e.mood_delta;
    prev = t;
  }
  out.segments.emplace_back(prev, duration);
  out.levels.push_back(level);

  const auto [lo_it, hi_it] = std::minmax_element(out.levels.begin(), out.levels.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (hi - lo < min_separation) throw FilteredOut(FilterReason::kLowSeparation);

  const std::size_t n = out.segments.size();
  std::vector<bool> high(n), low(n);
  std::vector<double> high_margin(n), low_margin(n);
  for (std::size_t i = 0; i < n; ++i) {
    high_margin[i] = out.levels[i] - (hi - span_band);
    low_margin[i] = (lo + span_band) - out.levels[i];
    high[i] = high_margin[i] >= 0.0;
    low[i] = low_margin[i] >= 0.0;
    if ((high[i] || low[i]) && out.segments[i].length() < min_seg) {
      throw FilteredOut(FilterReason::kShortSegment);
    }
  }
  out.highest = SelectSpans(out.segments, high, high_margin);
  out.lowest = SelectSpans(out.segments, low, low_margin);
  return out;
}

std::vector<QAItem> MtrItems(std::span<const TransitionEvent> events, Seconds duration,
                             const std::string& track_id, const GenerationConfig& cfg) {
  const MtrLabels labels =
      ComputeMtrLabels(events, duration, cfg.min_seg, cfg.min_separation, cfg.span_band);
  std::vector<QAItem> items;
  for (const bool highest : {true, false}) {
    QAItem item;
    item.task = Task::kMTR;
    item.track_id = track_id;
    item.duration = duration;
    const char* side = highest ? "highest" : "lowest";
    item.id = track_id + "-mtr-" + side;
    item.question = std::string("When is (are) the ") + side +
                    " arousal duration(s) in this audio? Answer with durations in seconds "
                    "as [START-END]; list several spans separated by commas if needed.";
    item.gold = highest ? labels.highest : labels.lowest;
    item.meta["side"] = side;
    items.push_back(std::move(item));
  }
  return items;
}

}  // namespace tgkit
