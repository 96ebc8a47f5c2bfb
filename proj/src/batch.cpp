// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <set>
#include <unordered_map>

#include "tgkit/harness.hpp"
#include "tgkit/rng.hpp"

namespace tgkit {

std::vector<RewardRecord> ComputeRewards(std::span<const QAItem> gold,
                                         std::span<const PredictionRecord> rollouts,
                                         const RewardConfig& cfg) {
  cfg.Validate();
  std::unordered_map<std::string, const QAItem*> by_id;
  for (const QAItem& item : gold) by_id.emplace(item.id, &item);
  std::vector<RewardRecord> out;
  for (const PredictionRecord& p : rollouts) {
    auto it = by_id.find(p.item_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kUnknownItem, "rollout for unknown item '" + p.item_id + "'");
    }
    const QAItem& item = *it->second;
    RewardRecord r;
    r.item_id = item.id;
    r.task = item.task;
    if (item.task == Task::kTSG) {
      const ParsedAnswer a = ParseTimestamp(p.raw_text);
      r.format_ok = a.format_ok();
      r.out_of_range = a.format_ok() && a.timestamp()->seconds() > item.duration;
      r.reward = TsgReward(a, std::get<Timestamp>(item.gold), item.duration, cfg);
    } else if (item.task == Task::kMTR) {
      const ParsedAnswer a = ParseIntervalList(p.raw_text);
      r.format_ok = a.format_ok();
      r.out_of_range = a.format_ok() && AnyOutOfRange(*a.intervals(), item.duration);
      r.reward = MtrReward(a, std::get<IntervalSet>(item.gold), item.duration, cfg);
    } else {
      continue;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Allocation> AllocateProfiles(std::span<const NamedProfile> profiles,
                                         const SamplingConfig& cfg,
                                         std::int64_t budget_override) {
  cfg.Validate();
  std::vector<Allocation> out;
  for (const NamedProfile& np : profiles) {
    np.profile.Validate();
    const auto frames = static_cast<std::int64_t>(np.profile.probs.size());
    Allocation a;
    a.id = np.id;
    a.budget = budget_override > 0 ? budget_override
                                   : std::min(TokenBudget(np.profile.duration, cfg), frames);
    a.indices = AllocateTokens(np.profile, static_cast<std::size_t>(a.budget), cfg);
    out.push_back(std::move(a));
  }
  return out;
}

namespace {

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<QAItem> GenerateQa(const FeatureTables& features, const GenerationConfig& cfg,
                               std::uint64_t seed, GenerationStats* stats) {
  GenerationStats local;
  GenerationStats& st = stats ? *stats : local;
  auto skip = [&](const std::string& reason) { ++st.skipped[reason]; };
  std::vector<QAItem> items;

  std::set<std::pair<std::string, std::string>> seen_sources;
  for (const SourceActivity& act : features.sources) {
    if (!seen_sources.emplace(act.track_id, act.source_id).second) {
      throw Error(ErrorCode::kSchema,
                  "duplicate source '" + act.source_id + "' in track " + act.track_id);
    }
    const double threshold = RelativeVolumeThreshold(act, cfg.volume_ratio);
    for (TsgMode mode : {TsgMode::kFirstOnset, TsgMode::kFinalOffset}) {
      try {
        items.push_back(TsgItem(act, threshold, mode));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoAudibleSpan) throw;
        skip("no_audible_span");
      }
    }
  }

  std::set<std::string> seen_tracks;
  for (const FeatureTables::Transitions& tr : features.transitions) {
    if (!seen_tracks.insert(tr.track_id).second) {
      throw Error(ErrorCode::kSchema, "duplicate transitions record for track " + tr.track_id);
    }
    std::vector<TransitionEvent> events = tr.events;
    std::stable_sort(events.begin(), events.end(),
                     [](const TransitionEvent& a, const TransitionEvent& b) {
                       return a.time < b.time;
                     });
    const std::uint64_t track_seed = SplitMix(seed ^ Fnv1a(tr.track_id));

    for (std::size_t i = 0; i < events.size(); ++i) {
      try {
        items.push_back(
            LtrItem(events, i, cfg.k_options, SplitMix(track_seed + i), tr.track_id, tr.duration));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInsufficientDistractors) throw;
        skip("insufficient_distractors");
      }
      items.push_back(TadItem(events, i, tr.track_id, tr.duration));
    }

    std::vector<std::size_t> distinct;
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (i == 0 || events[i].time != events[i - 1].time) distinct.push_back(i);
    }
    if (distinct.size() >= 3) {
      Rng rng(track_seed);
      rng.Shuffle(distinct);
      const std::vector<TransitionEvent> three = {events[distinct[0]], events[distinct[1]],
                                                  events[distinct[2]]};
      items.push_back(GtoItem(three, rng.Next(), tr.track_id, tr.duration));
    } else {
      skip("too_few_events");
    }

    try {
      for (QAItem& item : MtrItems(events, tr.duration, tr.track_id, cfg)) {
        items.push_back(std::move(item));
      }
    } catch (const FilteredOut& e) {
      skip(FilterReasonName(e.reason()));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kInvalidArgument) throw;
      skip("invalid_boundaries");
    }
  }

  std::sort(items.begin(), items.end(), [](const QAItem& a, const QAItem& b) {
    if (a.track_id != b.track_id) return a.track_id < b.track_id;
    if (a.task != b.task) return a.task < b.task;
    return a.id < b.id;
  });
  return items;
}

}  // namespace tgkit
