// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "synth.hpp"
#include "tgkit/harness.hpp"

using namespace tgkit;
using nlohmann::json;

namespace {

const char* kGold =
    R"({"schema":"tgkit.gold","version":1}
{"id":"a","task":"TSG","track_id":"t1","duration":100,"question":"q","mode":"onset","answer":72}
{"id":"b","task":"TSG","track_id":"t1","duration":100,"question":"q","mode":"offset","answer":90}
{"id":"c","task":"LTR","track_id":"t1","duration":100,"question":"q","options":["w","x","y","z"],"answer":"C"}
{"id":"d","task":"MTR","track_id":"t1","duration":100,"question":"q","answer":[[10,40]]}
)";

std::string Preds(std::initializer_list<std::pair<const char*, const char*>> rows) {
  std::string out = R"({"schema":"tgkit.pred","version":1})" "\n";
  for (auto [id, text] : rows) out += json({{"id", id}, {"text", text}}).dump() + "\n";
  return out;
}

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;  // sentinel: CHECKs compare against the expected code
}

double Sub(const RunReport& r, Task t, const std::string& name) {
  for (const TaskScores& ts : r.metrics.per_task)
    if (ts.task == t) return ts.sub_metrics.at(name);
  FAIL("task missing");
  return -1.0;
}

std::string MessageOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config parsing is strict") {
  const HarnessConfig d = ParseConfig("{}");
  CHECK(d.metrics.tolerance == 3.0);
  CHECK(d.reward.tsg_scale == 15.0);
  const HarnessConfig c = ParseConfig(R"({"metrics":{"tolerance":5},"threads":2})");
  CHECK(c.metrics.tolerance == 5.0);
  CHECK(c.threads == 2);
  CHECK(CodeOf([] { ParseConfig(R"({"metrics":{"tolerence":5}})"); }) == ErrorCode::kSchema);
  CHECK(CodeOf([] { ParseConfig(R"({"bogus":1})"); }) == ErrorCode::kSchema);
  CHECK(CodeOf([] { ParseConfig(R"({"metrics":{"tolerance":-1}})"); }) == ErrorCode::kSchema);
  CHECK(CodeOf([] { ParseConfig("{not json"); }) == ErrorCode::kSchema);
  // Round trip through the writer.
  const HarnessConfig r = ParseConfig(ConfigToJson(c));
  CHECK(r.metrics.tolerance == 5.0);
  CHECK(ConfigToJson(r) == ConfigToJson(c));
}

TEST_CASE("gold reader reports line and field") {
  CHECK(ParseGoldJsonl(kGold).size() == 4);
  const std::string bad_task = std::string(R"({"schema":"tgkit.gold","version":1})") + "\n" +
      R"({"id":"a","task":"XYZ","track_id":"t","duration":10,"question":"q","answer":1})" "\n";
  const std::string msg = MessageOf([&] { ParseGoldJsonl(bad_task, "g.jsonl"); });
  CHECK(msg.find("g.jsonl:2") != std::string::npos);
  CHECK(msg.find("task") != std::string::npos);

  const std::string no_header = R"({"id":"a"})" "\n";
  CHECK(CodeOf([&] { ParseGoldJsonl(no_header); }) == ErrorCode::kSchema);
  const std::string wrong_version = R"({"schema":"tgkit.gold","version":2})" "\n";
  CHECK(CodeOf([&] { ParseGoldJsonl(wrong_version); }) == ErrorCode::kSchema);
  const std::string missing = std::string(R"({"schema":"tgkit.gold","version":1})") + "\n" +
      R"({"id":"a","task":"TSG","track_id":"t","duration":10,"question":"q","mode":"onset"})" "\n";
  CHECK(MessageOf([&] { ParseGoldJsonl(missing); }).find("answer") != std::string::npos);
  const std::string extra = std::string(R"({"schema":"tgkit.gold","version":1})") + "\n" +
      R"({"id":"a","task":"LTR","track_id":"t","duration":10,"question":"q","answer":"A","options":["x","y"],"zzz":1})" "\n";
  CHECK(CodeOf([&] { ParseGoldJsonl(extra); }) == ErrorCode::kSchema);
}

TEST_CASE("gold and predictions round trip") {
  const auto gold = testing::SyntheticGold(testing::ScaledMix(60), 3);
  const auto back = ParseGoldJsonl(GoldToJsonl(gold));
  REQUIRE(back.size() == gold.size());
  CHECK(GoldToJsonl(back) == GoldToJsonl(gold));
  const auto preds = testing::PerfectPredictions(gold);
  CHECK(PredictionsToJsonl(ParsePredictionJsonl(PredictionsToJsonl(preds))) ==
        PredictionsToJsonl(preds));
}

TEST_CASE("evaluate small run") {
  const auto gold = ParseGoldJsonl(kGold);
  const auto preds = ParsePredictionJsonl(
      Preds({{"a", "74"}, {"b", "around 120 seconds"}, {"c", "C"}, {"d", "[10-40]"}}));
  const RunReport r = EvaluateRun(gold, preds, HarnessConfig{});
  REQUIRE(r.per_item.size() == 4);
  CHECK(r.metrics.per_task.size() == 3);
  CHECK(Sub(r, Task::kTSG, "onset_hit") == 100.0);
  CHECK(Sub(r, Task::kTSG, "offset_hit") == 0.0);
  CHECK(Sub(r, Task::kMTR, "iou") == doctest::Approx(100.0));
  CHECK(r.format_error_rate == 0.0);
  // b says 120 on a 100 s track: one of the three timestamp answers.
  CHECK(r.out_of_range_rate == doctest::Approx(1.0 / 3.0));
  CHECK(r.per_item[1].out_of_range);
  CHECK_FALSE(r.metrics.complete);

  const OutOfRangeStats oor = ComputeOutOfRangeStats(r, gold);
  CHECK(oor.considered == 3);
  CHECK(oor.fraction == doctest::Approx(1.0 / 3.0));

  HarnessConfig wide;
  wide.metrics.tolerance = 30.0;
  const RunReport w = EvaluateRun(gold, preds, wide);
  CHECK(Sub(w, Task::kTSG, "offset_hit") == 100.0);

  const RunReport only = EvaluateRun(gold, preds, HarnessConfig{}, Task::kLTR);
  CHECK(only.per_item.size() == 1);
  CHECK(only.metrics.total_avg == 100.0);
}

TEST_CASE("out of range: one in four and a millisecond past the end") {
  const std::string gold_text =
      std::string(R"({"schema":"tgkit.gold","version":1})") + "\n" +
      R"({"id":"1","task":"TSG","track_id":"t","duration":100,"question":"q","mode":"onset","answer":10})" "\n"
      R"({"id":"2","task":"TSG","track_id":"t","duration":100,"question":"q","mode":"onset","answer":10})" "\n"
      R"({"id":"3","task":"TSG","track_id":"t","duration":100,"question":"q","mode":"onset","answer":10})" "\n"
      R"({"id":"4","task":"TSG","track_id":"t","duration":100,"question":"q","mode":"onset","answer":10})" "\n";
  const auto gold = ParseGoldJsonl(gold_text);
  const auto preds =
      ParsePredictionJsonl(Preds({{"1", "10"}, {"2", "100"}, {"3", "50"}, {"4", "100.001"}}));
  const RunReport r = EvaluateRun(gold, preds, HarnessConfig{});
  CHECK(r.out_of_range_rate == doctest::Approx(0.25));
  CHECK_FALSE(r.per_item[1].out_of_range);
  CHECK(r.per_item[3].out_of_range);
}

TEST_CASE("empty prediction file gives all format errors") {
  const auto gold = ParseGoldJsonl(kGold);
  CHECK(ParsePredictionJsonl("").empty());
  const auto preds = ParsePredictionJsonl(Preds({}));
  const RunReport r = EvaluateRun(gold, preds, HarnessConfig{});
  CHECK(r.format_error_rate == 1.0);
  CHECK(r.missing_predictions == 4);
  CHECK(r.metrics.total_avg == 0.0);
  for (const ItemResult& it : r.per_item) CHECK_FALSE(it.has_prediction);
}

TEST_CASE("duplicate and unknown predictions") {
  const auto gold = ParseGoldJsonl(kGold);
  const auto dup = ParsePredictionJsonl(Preds({{"a", "1"}, {"a", "2"}}));
  CHECK(CodeOf([&] { EvaluateRun(gold, dup, HarnessConfig{}); }) ==
        ErrorCode::kDuplicatePrediction);
  const auto unknown = ParsePredictionJsonl(Preds({{"zz", "1"}}));
  CHECK(CodeOf([&] { EvaluateRun(gold, unknown, HarnessConfig{}); }) == ErrorCode::kUnknownItem);
  std::vector<QAItem> twice = gold;
  twice.push_back(gold[0]);
  CHECK(CodeOf([&] { EvaluateRun(twice, {}, HarnessConfig{}); }) == ErrorCode::kSchema);
}

TEST_CASE("property: result independent of line order and thread count") {
  const auto gold = testing::SyntheticGold(testing::ScaledMix(300), 5);
  auto preds = testing::PerfectPredictions(gold);
  Rng rng(71);
  for (auto& p : preds)
    if (rng.Below(3) == 0) p.raw_text = "I am not sure";
  HarnessConfig one;
  one.threads = 1;
  const std::string base = RunReportToJson(EvaluateRun(gold, preds, one));
  for (int trial = 0; trial < 3; ++trial) {
    auto g = gold;
    auto p = preds;
    rng.Shuffle(g);
    rng.Shuffle(p);
    HarnessConfig many;
    many.threads = 4;
    CHECK(RunReportToJson(EvaluateRun(g, p, many)) == base);
  }
}

TEST_CASE("report json round trip and table") {
  const auto gold = testing::SyntheticGold(testing::ScaledMix(100), 8);
  const RunReport r = EvaluateRun(gold, testing::PerfectPredictions(gold), HarnessConfig{});
  const std::string js = RunReportToJson(r);
  const RunReport back = RunReportFromJson(js);
  CHECK(RunReportToJson(back) == js);
  CHECK(back.metrics.total_avg == r.metrics.total_avg);
  CHECK(json::parse(js).at("schema") == "tgkit.report");
  CHECK(CodeOf([] { RunReportFromJson(R"({"schema":"other"})"); }) == ErrorCode::kSchema);

  const std::string table = RenderTable(r.metrics, 3.0, "perfect");
  CHECK(table.find("perfect") != std::string::npos);
  CHECK(table.find("Total") != std::string::npos);
  CHECK(table.find("100.0") != std::string::npos);
  CHECK(table.find("Hit tolerance: 3s") != std::string::npos);
}

TEST_CASE("sliding mean") {
  const std::vector<double> s = {0, 10, 20};
  CHECK(SlidingMean(s, 3) == std::vector<double>{5, 10, 15});
  CHECK(SlidingMean(s, 1) == s);
  CHECK(CodeOf([&] { SlidingMean(s, 0); }) == ErrorCode::kInvalidArgument);
  // Even window: (w-1)/2 left, w/2 right.
  const std::vector<double> t = {0, 4, 8, 12};
  CHECK(SlidingMean(t, 2) == std::vector<double>{2, 6, 10, 12});

  Rng rng(72);
  std::vector<double> x(200);
  for (double& v : x) v = rng.Uniform01();
  for (std::size_t w : {1u, 2u, 7u, 20u, 400u}) {
    const auto got = SlidingMean(x, w);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, std::ptrdiff_t(i) - std::ptrdiff_t((w - 1) / 2));
      const std::size_t hi = std::min(x.size() - 1, i + w / 2);
      double sum = 0;
      for (std::size_t k = std::size_t(lo); k <= hi; ++k) sum += x[k];
      CHECK(got[i] == doctest::Approx(sum / double(hi - std::size_t(lo) + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("rewards batch") {
  const auto gold = ParseGoldJsonl(kGold);
  const auto rollouts = ParsePredictionJsonl(
      Preds({{"a", "87"}, {"a", "??"}, {"c", "C"}, {"d", "[10-40], [90-120]"}}));
  const auto rw = ComputeRewards(gold, rollouts, RewardConfig{});
  REQUIRE(rw.size() == 3);
  CHECK(rw[0].reward == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(rw[1].reward == -1.0);
  CHECK_FALSE(rw[1].format_ok);
  CHECK(rw[2].out_of_range);
  CHECK(rw[2].reward < 0.5);
  CHECK(RewardsToJsonl(rw).find("tgkit.rewards") != std::string::npos);
  const auto unknown = ParsePredictionJsonl(Preds({{"zz", "1"}}));
  CHECK(CodeOf([&] { ComputeRewards(gold, unknown, RewardConfig{}); }) ==
        ErrorCode::kUnknownItem);
}

TEST_CASE("profiles and allocations") {
  const std::string text = std::string(R"({"schema":"tgkit.profiles","version":1})") + "\n" +
                           R"({"id":"p","frame_rate_hz":1,"duration":10,"probs":[0,0,1,1,0,0,0,0,0,0]})" "\n";
  const auto profiles = ParseProfileJsonl(text);
  REQUIRE(profiles.size() == 1);
  const auto alloc = AllocateProfiles(profiles, SamplingConfig{});
  CHECK(alloc[0].budget == 10);  // min(66, 10 frames)
  const auto small = AllocateProfiles(profiles, SamplingConfig{}, 4);
  CHECK(small[0].indices.size() == 4);
  CHECK(std::count(small[0].indices.begin(), small[0].indices.end(), 2) == 1);
  CHECK(std::count(small[0].indices.begin(), small[0].indices.end(), 3) == 1);
  CHECK(AllocationsToJsonl(small).find("\"indices\"") != std::string::npos);
}

namespace {

const char* kFeatures =
    R"({"schema":"tgkit.features","version":1}
{"kind":"source","track_id":"t1","source_id":"guitar","duration":200,"events":[[10,20,0.2],[30,80,1.0],[100,150,0.8]]}
{"kind":"source","track_id":"t1","source_id":"bass","duration":200,"events":[[0,5,0.0]]}
{"kind":"transitions","track_id":"t1","duration":90,"events":[{"time":30,"description":"drums enter","mood_delta":2},{"time":60,"description":"strings fade","mood_delta":-3},{"time":75,"description":"tempo rises","mood_delta":0}]}
)";

}  // namespace

TEST_CASE("qa generation") {
  const FeatureTables ft = ParseFeatureJsonl(kFeatures);
  CHECK(ft.sources.size() == 2);
  CHECK(ft.transitions.size() == 1);
  GenerationConfig cfg;
  cfg.k_options = 3;
  GenerationStats stats;
  const auto items = GenerateQa(ft, cfg, 42, &stats);
  CHECK(GoldToJsonl(GenerateQa(ft, cfg, 42)) == GoldToJsonl(items));
  std::map<Task, int> counts;
  for (const QAItem& it : items) {
    ++counts[it.task];
    CHECK_NOTHROW(it.Validate());
  }
  CHECK(counts[Task::kTSG] == 2);  // guitar onset and offset
  CHECK(counts[Task::kLTR] == 3);
  CHECK(counts[Task::kTAD] == 3);
  CHECK(counts[Task::kGTO] == 1);
  CHECK(stats.skipped["no_audible_span"] == 2);
  CHECK(std::is_sorted(items.begin(), items.end(), [](const QAItem& a, const QAItem& b) {
    return std::tie(a.track_id, a.task, a.id) < std::tie(b.track_id, b.task, b.id);
  }));
  // The 75 s boundary leaves a 15 s closing segment at the low level.
  CHECK(counts[Task::kMTR] == 2);

  const std::string dup = std::string(kFeatures) +
      R"({"kind":"source","track_id":"t1","source_id":"guitar","duration":200,"events":[[1,2,1]]})" "\n";
  CHECK(CodeOf([&] { GenerateQa(ParseFeatureJsonl(dup), cfg, 1); }) == ErrorCode::kSchema);
  const std::string bad = std::string(R"({"schema":"tgkit.features","version":1})") + "\n" +
      R"({"kind":"transitions","track_id":"t","duration":90,"events":[{"time":30,"description":"x","mood_delta":7}]})" "\n";
  CHECK(CodeOf([&] { ParseFeatureJsonl(bad); }) == ErrorCode::kSchema);
}
