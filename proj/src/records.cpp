// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "tgkit/harness.hpp"

namespace tgkit {

namespace {

using internal::Json;
using internal::Record;

char LetterField(const Record& r, const char* key) {
  const std::string s = r.String(key);
  if (s.size() != 1 || s[0] < 'A' || s[0] > 'F') r.Fail(key, "expected a letter A-F");
  return s[0];
}

IntervalSet SpansField(const Record& r, const char* key) {
  const Json& v = r.Raw(key);
  if (!v.is_array()) r.Fail(key, "expected [[start, end], ...]");
  std::vector<Interval> spans;
  for (const Json& p : v) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      r.Fail(key, "expected [[start, end], ...]");
    }
    try {
      spans.emplace_back(p[0].get<double>(), p[1].get<double>());
    } catch (const Error& e) {
      r.Fail(key, e.what());
    }
  }
  return IntervalSet(std::move(spans));
}

Json SpansJson(const IntervalSet& s) {
  Json out = Json::array();
  for (const Interval& iv : s.intervals()) {
    out.push_back({iv.start().seconds(), iv.end().seconds()});
  }
  return out;
}

std::vector<std::string> StringList(const Record& r, const char* key) {
  const Json& v = r.Raw(key);
  if (!v.is_array()) r.Fail(key, "expected array of strings");
  std::vector<std::string> out;
  for (const Json& x : v) {
    if (!x.is_string()) r.Fail(key, "expected array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

QAItem GoldFrom(const Record& r) {
  r.OnlyKeys({"id", "task", "track_id", "duration", "question", "options", "mode", "answer",
              "meta"});
  QAItem item;
  item.id = r.String("id");
  if (item.id.empty()) r.Fail("id", "must not be empty");
  try {
    item.task = TaskFromName(r.String("task"));
  } catch (const Error&) {
    r.Fail("task", "expected one of TSG, LTR, TAD, GTO, MTR");
  }
  item.track_id = r.String("track_id");
  item.duration = r.Number("duration");
  if (!(item.duration > 0.0)) r.Fail("duration", "must be positive");
  item.question = r.String("question");
  if (r.Has("options")) item.options = StringList(r, "options");
  if (r.Has("mode")) {
    try {
      item.tsg_mode = TsgModeFromName(r.String("mode"));
    } catch (const Error&) {
      r.Fail("mode", "expected 'onset' or 'offset'");
    }
  }
  switch (item.task) {
    case Task::kTSG: {
      const double t = r.Number("answer");
      if (!(t >= 0.0)) r.Fail("answer", "must be >= 0");
      item.gold = Timestamp(t);
      break;
    }
    case Task::kLTR:
    case Task::kGTO:
      item.gold = OptionLetter{LetterField(r, "answer")};
      break;
    case Task::kTAD:
      item.gold = r.String("answer");
      if (std::get<std::string>(item.gold).empty()) r.Fail("answer", "must not be empty");
      break;
    case Task::kMTR:
      item.gold = SpansField(r, "answer");
      break;
  }
  if (r.Has("meta")) {
    const Json& m = r.Raw("meta");
    if (!m.is_object()) r.Fail("meta", "expected object of strings");
    for (auto it = m.begin(); it != m.end(); ++it) {
      if (!it.value().is_string()) r.Fail("meta", "expected object of strings");
      item.meta[it.key()] = it.value().get<std::string>();
    }
  }
  try {
    item.Validate();
  } catch (const Error& e) {
    r.Fail("", e.what());
  }
  return item;
}

}  // namespace

std::vector<QAItem> ParseGoldJsonl(std::string_view text, std::string_view source) {
  std::vector<QAItem> items;
  internal::ForEachJsonlRecord(text, source, kGoldSchema,
                               [&](const Record& r) { items.push_back(GoldFrom(r)); });
  return items;
}

std::vector<PredictionRecord> ParsePredictionJsonl(std::string_view text,
                                                   std::string_view source) {
  std::vector<PredictionRecord> preds;
  internal::ForEachJsonlRecord(text, source, kPredictionSchema, [&](const Record& r) {
    r.OnlyKeys({"id", "text", "audio_emb", "text_emb"});
    PredictionRecord p;
    p.item_id = r.String("id");
    p.raw_text = r.String("text");
    if (r.Has("audio_emb")) p.audio_emb = r.Numbers("audio_emb");
    if (r.Has("text_emb")) p.text_emb = r.Numbers("text_emb");
    preds.push_back(std::move(p));
  });
  return preds;
}

std::string GoldToJsonl(std::span<const QAItem> items) {
  std::string out = internal::HeaderLine(kGoldSchema);
  for (const QAItem& item : items) {
    Json j = {{"id", item.id},
              {"task", TaskName(item.task)},
              {"track_id", item.track_id},
              {"duration", item.duration},
              {"question", item.question}};
    if (!item.options.empty()) j["options"] = item.options;
    if (item.tsg_mode) j["mode"] = TsgModeName(*item.tsg_mode);
    std::visit(
        [&](const auto& g) {
          using G = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<G, Timestamp>) {
            j["answer"] = g.seconds();
          } else if constexpr (std::is_same_v<G, OptionLetter>) {
            j["answer"] = std::string(1, g.letter);
          } else if constexpr (std::is_same_v<G, std::string>) {
            j["answer"] = g;
          } else {
            j["answer"] = SpansJson(g);
          }
        },
        item.gold);
    if (!item.meta.empty()) j["meta"] = item.meta;
    out += j.dump() + "\n";
  }
  return out;
}

std::string PredictionsToJsonl(std::span<const PredictionRecord> preds) {
  std::string out = internal::HeaderLine(kPredictionSchema);
  for (const PredictionRecord& p : preds) {
    Json j = {{"id", p.item_id}, {"text", p.raw_text}};
    if (p.audio_emb) j["audio_emb"] = *p.audio_emb;
    if (p.text_emb) j["text_emb"] = *p.text_emb;
    out += j.dump() + "\n";
  }
  return out;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed for '" + path + "'");
  return ss.str();
}

void WriteTextFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

std::string GoldAnswerText(const QAItem& item) {
  return std::visit(
      [](const auto& g) -> std::string {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Timestamp>) {
          return FormatTimestamp(g);
        } else if constexpr (std::is_same_v<G, OptionLetter>) {
          return FormatLetter(g.letter);
        } else if constexpr (std::is_same_v<G, std::string>) {
          return g;
        } else {
          return FormatIntervalList(g);
        }
      },
      item.gold);
}

std::vector<NamedProfile> ParseProfileJsonl(std::string_view text, std::string_view source) {
  std::vector<NamedProfile> out;
  internal::ForEachJsonlRecord(text, source, kProfileSchema, [&](const Record& r) {
    r.OnlyKeys({"id", "frame_rate_hz", "duration", "probs"});
    NamedProfile p;
    p.id = r.String("id");
    p.profile.frame_rate_hz = r.Number("frame_rate_hz");
    p.profile.duration = r.Number("duration");
    p.profile.probs = r.Numbers("probs");
    try {
      p.profile.Validate();
    } catch (const Error& e) {
      r.Fail("", e.what());
    }
    out.push_back(std::move(p));
  });
  return out;
}

std::string RewardsToJsonl(std::span<const RewardRecord> rewards) {
  std::string out = internal::HeaderLine(kRewardSchema);
  for (const RewardRecord& r : rewards) {
    Json j = {{"id", r.item_id},
              {"task", TaskName(r.task)},
              {"reward", r.reward},
              {"format_ok", r.format_ok},
              {"out_of_range", r.out_of_range}};
    out += j.dump() + "\n";
  }
  return out;
}

std::string AllocationsToJsonl(std::span<const Allocation> allocations) {
  std::string out = internal::HeaderLine(kAllocationSchema);
  for (const Allocation& a : allocations) {
    Json j = {{"id", a.id}, {"budget", a.budget}, {"indices", a.indices}};
    out += j.dump() + "\n";
  }
  return out;
}

FeatureTables ParseFeatureJsonl(std::string_view text, std::string_view source) {
  FeatureTables out;
  internal::ForEachJsonlRecord(text, source, kFeatureSchema, [&](const Record& r) {
    const std::string kind = r.String("kind");
    if (kind == "source") {
      r.OnlyKeys({"kind", "track_id", "source_id", "duration", "events"});
      SourceActivity act;
      act.track_id = r.String("track_id");
      act.source_id = r.String("source_id");
      act.track_duration = r.Number("duration");
      const Json& ev = r.Raw("events");
      if (!ev.is_array()) r.Fail("events", "expected [[start, end, volume], ...]");
      for (const Json& e : ev) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number() || !e[1].is_number() ||
            !e[2].is_number()) {
          r.Fail("events", "expected [[start, end, volume], ...]");
        }
        act.events.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
      }
      try {
        act.Validate();
      } catch (const Error& e) {
        r.Fail("events", e.what());
      }
      out.sources.push_back(std::move(act));
    } else if (kind == "transitions") {
      r.OnlyKeys({"kind", "track_id", "duration", "events"});
      FeatureTables::Transitions tr;
      tr.track_id = r.String("track_id");
      tr.duration = r.Number("duration");
      if (!(tr.duration > 0.0)) r.Fail("duration", "must be positive");
      const Json& ev = r.Raw("events");
      if (!ev.is_array()) r.Fail("events", "expected array of transition objects");
      for (const Json& e : ev) {
        const Record er(e, r.location() + ".events");
        er.OnlyKeys({"time", "description", "mood_delta"});
        const double t = er.Number("time");
        if (!(t >= 0.0 && t <= tr.duration)) er.Fail("time", "outside the track");
        const double d = er.Has("mood_delta") ? er.Number("mood_delta") : 0.0;
        if (!(d >= -3.0 && d <= 3.0)) er.Fail("mood_delta", "must be in [-3, 3]");
        tr.events.push_back({Timestamp(t), er.String("description"), d});
      }
      out.transitions.push_back(std::move(tr));
    } else {
      r.Fail("kind", "expected 'source' or 'transitions'");
    }
  });
  return out;
}

}  // namespace tgkit
