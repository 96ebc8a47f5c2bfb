// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. Prints one PASS/FAIL line per criterion. Tolerances are
// fixed below; nothing here reads them from the environment.
//
// Exit status is 0 when every criterion passes, or when the only failures are
// the cells listed in kKnownTableDeviations (an expected failure that must
// keep failing exactly as recorded: a new failing cell or a known cell that
// starts passing both make the run fail).

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "synth.hpp"
#include "tgkit/harness.hpp"

using namespace tgkit;

namespace {

// Pinned tolerances.
constexpr double kTableTol = 0.05;
constexpr double kTableSlack = 1e-9;  // binary representation of the printed decimals
constexpr double kTableSeconds = 1.0;
constexpr double kPerfectSeconds = 5.0;
constexpr double kMtrRewardFloor = 0.999;
constexpr double kExactTol = 1e-12;
constexpr double kGridTol = 1e-3;
constexpr double kRewardTol = 1e-12;
constexpr double kCccSelfTol = 1e-6;
constexpr double kCccConstTol = 1e-9;
constexpr double kSftTol = 1e-12;
constexpr double kEvalSeconds = 10.0;
constexpr int kGridPairs = 10'000;
constexpr int kProfiles = 1'000;
constexpr std::size_t kEvalItems = 10'000;

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failed_cells;  // criterion 1 only
};

void Note(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    if (o.detail.size() < 400) o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
}

std::string Fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

// ---- 1: table replay -------------------------------------------------------

struct TableRow {
  const char* model;
  // Onset Offset TSGavg LTR METEOR CLAP TADavg GTO IoU F1 MTRavg Total
  std::array<double, 12> v;
};

const TableRow kTable[] = {
    {"Gemini 2.5 Flash", {60.0, 71.5, 65.8, 56.7, 11.2, 34.5, 22.9, 42.4, 24.8, 33.1, 29.0, 41.8}},
    {"Gemini 2.5 Pro", {57.5, 57.0, 57.3, 62.5, 10.0, 38.1, 24.1, 46.0, 22.4, 28.6, 25.5, 40.3}},
    {"Gemini 3 Flash", {55.0, 42.5, 48.8, 51.4, 10.7, 37.9, 24.3, 47.0, 25.7, 34.2, 30.0, 38.1}},
    {"Gemini 3 Pro", {60.0, 44.5, 52.3, 54.3, 6.5, 33.0, 19.8, 27.3, 29.2, 37.6, 33.4, 36.6}},
    {"GPT Audio", {21.5, 1.5, 11.5, 42.3, 12.0, 33.0, 22.5, 36.9, 13.8, 19.6, 16.7, 22.6}},
    {"GPT Audio 1.5", {14.0, 3.5, 8.8, 51.0, 12.4, 34.8, 23.6, 37.9, 13.7, 20.3, 17.0, 23.5}},
    {"Phi-4-mm", {14.6, 0.0, 7.3, 28.4, 9.6, 23.0, 16.3, 13.1, 5.0, 8.8, 6.9, 12.8}},
    {"AF-Next", {17.0, 3.0, 10.0, 44.7, 9.0, 29.4, 19.2, 41.4, 2.2, 3.4, 2.8, 18.8}},
    {"Music Flamingo", {53.0, 24.0, 38.5, 56.3, 13.4, 33.4, 23.4, 41.4, 10.1, 17.1, 13.6, 31.1}},
    {"Qwen2.5 Omni 3B", {7.5, 2.0, 4.8, 32.7, 11.0, 33.6, 22.3, 37.4, 8.2, 12.8, 10.5, 18.2}},
    {"Qwen2.5 Omni 7B", {39.0, 3.5, 21.3, 45.7, 9.2, 33.7, 21.5, 46.5, 6.4, 10.6, 8.5, 24.3}},
    {"Qwen3 Omni", {62.5, 9.5, 36.0, 53.4, 7.1, 24.9, 16.0, 63.6, 8.8, 12.0, 10.4, 30.2}},
    {"MusT 3B", {35.5, 41.0, 38.3, 58.2, 21.7, 35.4, 28.5, 57.1, 24.1, 31.4, 27.8, 38.1}},
    {"MusT 7B", {55.5, 62.5, 59.0, 60.6, 21.0, 34.6, 27.8, 67.2, 22.6, 29.1, 25.9, 44.1}},
};

// (21.7 + 35.4) / 2 = 28.55 rounds half-up to 28.6; the table prints 28.5.
const std::set<std::string> kKnownTableDeviations = {"MusT 3B/TADavg"};

Outcome TableReplay() {
  Outcome o;
  const auto t0 = Clock::now();
  int cells = 0;
  for (const TableRow& row : kTable) {
    const auto& v = row.v;
    const std::vector<TaskScores> scores = {
        {Task::kTSG, {{"onset_hit", v[0]}, {"offset_hit", v[1]}}, 1},
        {Task::kLTR, {{"acc", v[3]}}, 1},
        {Task::kTAD, {{"meteor", v[4]}, {"align", v[5]}}, 1},
        {Task::kGTO, {{"acc", v[7]}}, 1},
        {Task::kMTR, {{"iou", v[8]}, {"f1", v[9]}}, 1},
    };
    const MetricsReport m = Aggregate(scores);
    const std::pair<const char*, std::pair<double, double>> checks[] = {
        {"TSGavg", {m.task_avgs.at(Task::kTSG), v[2]}},
        {"TADavg", {m.task_avgs.at(Task::kTAD), v[6]}},
        {"MTRavg", {m.task_avgs.at(Task::kMTR), v[10]}},
        {"Total", {m.total_avg, v[11]}},
    };
    for (const auto& [name, cv] : checks) {
      ++cells;
      const double rounded = RoundHalfUp1(cv.first);
      if (std::abs(rounded - cv.second) > kTableTol + kTableSlack) {
        o.failed_cells.push_back(std::string(row.model) + "/" + name);
        o.detail += (o.detail.empty() ? "" : "; ") + std::string(row.model) + " " + name +
                    Fmt(" computed %.4f -> %.1f, printed %.1f", cv.first, rounded, cv.second);
      }
    }
  }
  const double secs = Since(t0);
  o.pass = o.failed_cells.empty() && secs < kTableSeconds;
  if (secs >= kTableSeconds) o.detail += Fmt("; took %.3f s", secs);
  o.detail = Fmt("%.0f cells, ", cells) + Fmt("%.4f s", secs) +
             (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

// ---- 2: perfect predictor --------------------------------------------------

double Sub(const RunReport& r, Task t, const char* name) {
  for (const TaskScores& ts : r.metrics.per_task)
    if (ts.task == t) return ts.sub_metrics.at(name);
  return -1.0;
}

Outcome PerfectPredictor() {
  Outcome o;
  const auto gold = testing::SyntheticGold(testing::kTestSplitMix, 2026);
  const auto preds = testing::PerfectPredictions(gold);
  const auto t0 = Clock::now();
  HarnessConfig cfg;
  const RunReport r = EvaluateRun(gold, preds, cfg);
  const auto rewards = ComputeRewards(gold, preds, cfg.reward);
  const double secs = Since(t0);

  Note(o, gold.size() == 1264, "item count");
  Note(o, Sub(r, Task::kTSG, "onset_hit") == 100.0, "onset hit");
  Note(o, Sub(r, Task::kTSG, "offset_hit") == 100.0, "offset hit");
  Note(o, Sub(r, Task::kLTR, "acc") == 100.0, "LTR acc");
  Note(o, Sub(r, Task::kGTO, "acc") == 100.0, "GTO acc");
  Note(o, std::abs(Sub(r, Task::kMTR, "iou") - 100.0) <= kExactTol, "MTR IoU");
  Note(o, std::abs(Sub(r, Task::kMTR, "f1") - 100.0) <= kExactTol, "MTR F1");
  double tsg = 0, mtr = 0;
  std::size_t nt = 0, nm = 0;
  for (const RewardRecord& rw : rewards) {
    if (rw.task == Task::kTSG) tsg += rw.reward, ++nt;
    else mtr += rw.reward, ++nm;
  }
  tsg /= static_cast<double>(nt);
  mtr /= static_cast<double>(nm);
  Note(o, nt == 400 && nm == 250, "reward counts");
  Note(o, std::abs(tsg - 1.0) <= kExactTol, Fmt("tsg reward mean %.15f", tsg));
  Note(o, mtr >= kMtrRewardFloor, Fmt("mtr reward mean %.6f", mtr));
  Note(o, secs < kPerfectSeconds, Fmt("took %.3f s", secs));
  if (o.pass)
    o.detail = Fmt("1264 items, tsg reward %.6f, mtr reward %.6f, ", tsg, mtr) +
               Fmt("%.3f s", secs);
  return o;
}

// ---- 3: continuous metrics vs a 1 ms grid ----------------------------------

struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(std::size_t n) : w((n + 63) / 64, 0) {}
  void SetRange(std::size_t a, std::size_t b) {  // [a, b)
    for (std::size_t i = a; i < b && (i & 63) != 0; ++i, ++a) w[i >> 6] |= 1ull << (i & 63);
    while (a + 64 <= b) w[a >> 6] = ~0ull, a += 64;
    for (; a < b; ++a) w[a >> 6] |= 1ull << (a & 63);
  }
};

std::size_t Ms(Seconds s) { return static_cast<std::size_t>(std::llround(s * 1000.0)); }

Outcome GridOracle() {
  Outcome o;
  Rng rng(3003);
  constexpr std::size_t kCells = 300'000;
  double worst = 0.0;
  for (int k = 0; k < kGridPairs; ++k) {
    const IntervalSet p(testing::RandomIntervalsMs(rng, 300.0, 1, 5));
    const IntervalSet g(testing::RandomIntervalsMs(rng, 300.0, 1, 5));
    Bits bp(kCells), bg(kCells);
    for (const Interval& iv : p.intervals()) bp.SetRange(Ms(iv.start().seconds()), Ms(iv.end().seconds()));
    for (const Interval& iv : g.intervals()) bg.SetRange(Ms(iv.start().seconds()), Ms(iv.end().seconds()));
    std::size_t np = 0, ng = 0, ni = 0;
    for (std::size_t i = 0; i < bp.w.size(); ++i) {
      np += static_cast<std::size_t>(__builtin_popcountll(bp.w[i]));
      ng += static_cast<std::size_t>(__builtin_popcountll(bg.w[i]));
      ni += static_cast<std::size_t>(__builtin_popcountll(bp.w[i] & bg.w[i]));
    }
    const double iou_grid = static_cast<double>(ni) / static_cast<double>(np + ng - ni);
    const double f1_grid = 2.0 * static_cast<double>(ni) / static_cast<double>(np + ng);
    const double iou = TemporalIoU(p, g);
    const double f1 = TemporalF1(p, g);
    worst = std::max({worst, std::abs(iou - iou_grid), std::abs(f1 - f1_grid)});
    Note(o, std::abs(iou - iou_grid) <= kGridTol, Fmt("pair %.0f IoU off by %.2e", k, iou - iou_grid));
    Note(o, std::abs(f1 - f1_grid) <= kGridTol, Fmt("pair %.0f F1 off by %.2e", k, f1 - f1_grid));
    Note(o, iou <= f1, Fmt("pair %.0f IoU %.17g > F1", k, iou));
  }
  if (o.pass) o.detail = Fmt("%.0f pairs, worst deviation %.2e", kGridPairs, worst);
  return o;
}

// ---- 4: rewards ------------------------------------------------------------

ParsedAnswer Ts(double t) { return ParseTimestamp(FormatTimestamp(Timestamp(t))); }

Outcome Rewards() {
  Outcome o;
  const double at15 = TsgReward(Ts(115), Timestamp(100), 300);
  Note(o, std::abs(at15 - std::exp(-1.0)) <= kRewardTol, Fmt("15 s error gives %.17g", at15));
  double prev = INFINITY;
  for (int e = 0; e <= 120; ++e) {
    const double r = TsgReward(Ts(100.0 + e), Timestamp(100), 300);
    Note(o, r < prev, Fmt("not decreasing at %.0f s", e));
    prev = r;
  }
  Note(o, TsgReward(ParseTimestamp("no idea"), Timestamp(100), 300) == -1.0, "tsg format");
  const IntervalSet gold(std::vector<Interval>{Interval(110, 140)});
  Note(o, MtrReward(ParseIntervalList("whenever"), gold, 300) == -1.0, "mtr format");
  const ParsedAnswer out = ParseIntervalList("[100-130], [280-320]");
  const double soft = MtrSoftF1(*out.intervals(), gold, 300);
  Note(o, MtrReward(out, gold, 300) == soft - 0.5, "mtr out-of-range penalty");
  if (o.pass) o.detail = Fmt("r(15 s) = %.12f, 121 strictly decreasing steps", at15);
  return o;
}

// ---- 5: soft F1 ------------------------------------------------------------

Outcome SoftF1() {
  Outcome o;
  const IntervalSet gold(std::vector<Interval>{Interval(110, 140)});
  const IntervalSet near(std::vector<Interval>{Interval(100, 130)});
  const IntervalSet far(std::vector<Interval>{Interval(60, 90)});
  // The stated 0.5 reference is the hard IoU of this pair; the hard F1 is 2/3.
  const double iou = TemporalIoU(near, gold);
  const double hard = TemporalF1(near, gold);
  const double s_near = MtrSoftF1(near, gold, 300);
  const double s_far = MtrSoftF1(far, gold, 300);
  Note(o, std::abs(iou - 0.5) <= kExactTol, "hard IoU");
  Note(o, std::abs(hard - 2.0 / 3.0) <= kExactTol, "hard F1");
  Note(o, s_near > 0.5 && s_near > hard && s_near < 1.0, Fmt("soft F1 %.6f", s_near));
  Note(o, s_near > s_far, Fmt("shift %.6f -> %.6f", s_far, s_near));
  o.detail = Fmt("hard IoU %.3f, hard F1 %.3f, soft %.6f", iou, hard, s_near) +
             Fmt(", shifted-away soft %.6f", s_far);
  return o;
}

// ---- 6: objectives ---------------------------------------------------------

Outcome Objectives() {
  Outcome o;
  const std::vector<double> x = {0.2, -1.3, 0.7, 2.1, -0.4, 0.0, 1.1};
  const double self = CccLoss(x, x);
  Note(o, self <= kCccSelfTol, Fmt("ccc(x,x) = %.3e", self));
  const std::vector<double> c(x.size(), 0.5);
  const double cv = CccLoss(c, x);
  Note(o, std::abs(cv - 1.0) <= kCccConstTol, Fmt("ccc(const, x) = %.17g", cv));

  std::vector<SftItem> batch;
  for (int i = 0; i < 10; ++i)
    batch.push_back({"A", {i % 2 == 0 ? 0.5 : 1.5}, {true}});
  batch.push_back({"B", {3.0}, {true}});
  const double base = BalancedSftLoss(batch);
  Note(o, std::abs(base - 2.0) <= kSftTol, Fmt("balanced loss %.17g", base));
  std::vector<SftItem> dup = batch;
  dup.insert(dup.end(), batch.begin(), batch.end());
  Note(o, std::abs(BalancedSftLoss(dup) - 2.0) <= kSftTol, "duplication changes loss");
  std::vector<SftItem> padded = batch;
  for (SftItem& it : padded) {
    it.token_nll.insert(it.token_nll.begin(), 40.0);
    it.answer_mask.insert(it.answer_mask.begin(), false);
  }
  Note(o, std::abs(BalancedSftLoss(padded) - 2.0) <= kSftTol, "padding changes loss");
  if (o.pass) o.detail = Fmt("ccc self %.1e, ccc const %.12f, sft %.12f", self, cv, base);
  return o;
}

// ---- 7: token allocation ---------------------------------------------------

std::size_t CountIn(const std::vector<std::size_t>& idx, std::size_t lo, std::size_t hi) {
  return static_cast<std::size_t>(
      std::count_if(idx.begin(), idx.end(), [&](std::size_t i) { return i >= lo && i < hi; }));
}

Outcome TokenAllocation() {
  Outcome o;
  Rng rng(7007);
  for (int k = 0; k < kProfiles; ++k) {
    TransitionProfile p;
    const std::size_t n = 20 + rng.Below(1980);
    p.frame_rate_hz = 1.0;
    p.duration = static_cast<double>(n);
    p.probs.resize(n);
    const bool zero = k % 10 == 0;
    for (double& v : p.probs) v = zero ? 0.0 : (rng.Below(5) == 0 ? rng.Uniform01() : 0.05);
    const std::size_t budget = 1 + rng.Below(n);
    const auto idx = AllocateTokens(p, budget);
    Note(o, idx.size() == budget, "budget not exact");
    Note(o, std::is_sorted(idx.begin(), idx.end()) &&
                std::adjacent_find(idx.begin(), idx.end()) == idx.end(),
         "indices not distinct and sorted");
    if (zero) {
      TransitionProfile flat = p;
      std::fill(flat.probs.begin(), flat.probs.end(), 0.37);
      Note(o, AllocateTokens(flat, budget) == idx, "zero profile differs from uniform");
    }
    const std::size_t lo = rng.Below(n);
    const std::size_t hi = lo + 1 + rng.Below(std::min<std::size_t>(n - lo, 200));
    TransitionProfile raised = p;
    for (std::size_t i = lo; i < hi; ++i) raised.probs[i] = std::min(1.0, raised.probs[i] + 0.5);
    Note(o, CountIn(AllocateTokens(raised, budget), lo, hi) >= CountIn(idx, lo, hi),
         "raising a region lowered its tokens");
  }
  if (o.pass) o.detail = Fmt("%.0f profiles", kProfiles);
  return o;
}

// ---- 8: GTO brute force ----------------------------------------------------

Outcome GtoBruteForce() {
  Outcome o;
  const std::array<double, 3> times = {15.0, 160.0, 200.0};
  std::array<int, 3> perm = {0, 1, 2};
  int n = 0;
  do {
    const std::array<Timestamp, 3> xyz = {Timestamp(times[perm[0]]), Timestamp(times[perm[1]]),
                                          Timestamp(times[perm[2]])};
    std::string order;
    for (double t : times)
      for (int l = 0; l < 3; ++l)
        if (xyz[l].seconds() == t) order += static_cast<char>('X' + l);
    const char letter = GtoGoldLetter(xyz);
    const LabelOrder& row = GtoOptionTable()[static_cast<std::size_t>(letter - 'A')];
    Note(o, std::string(row.begin(), row.end()) == order, "assignment " + order);
    ++n;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const char example = GtoGoldLetter({Timestamp(200), Timestamp(15), Timestamp(160)});
  Note(o, example == 'D', std::string("example gave ") + example);
  if (o.pass) o.detail = Fmt("%.0f assignments, X@200 Y@15 Z@160 -> D", n);
  return o;
}

// ---- 9: parser corpus ------------------------------------------------------

Outcome ParserCorpus() {
  Outcome o;
  std::ifstream in(std::string(TGKIT_TEST_DATA) + "/parser_corpus.jsonl");
  if (!in) {
    Note(o, false, "corpus missing");
    return o;
  }
  std::string line;
  int n = 0, ok = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    const std::string kind = j["kind"], text = j["text"];
    const std::string allowed = j.value("allowed", std::string("ABCD"));
    const ParsedAnswer a = kind == "timestamp"       ? ParseTimestamp(text)
                           : kind == "interval_list" ? ParseIntervalList(text)
                           : kind == "choice"        ? ParseChoice(text, allowed)
                                                     : ParseOrdering(text);
    const bool good = j["expect"].is_null()
                          ? !a.format_ok()
                          : a.format_ok() && FormatAnswer(a) == j["expect"].get<std::string>();
    Note(o, good, "case " + std::to_string(n + 1));
    ok += good;
    ++n;
  }
  Note(o, n == 60, "corpus size");
  o.detail = Fmt("%.0f/%.0f cases", ok, n) + (o.detail.empty() ? "" : ": " + o.detail);
  return o;
}

// ---- 10: evaluation throughput ---------------------------------------------

Outcome Throughput() {
  Outcome o;
  const auto gold = testing::SyntheticGold(testing::ScaledMix(kEvalItems), 10);
  auto preds = testing::PerfectPredictions(gold);
  Rng rng(1010);
  for (auto& p : preds) {
    const auto roll = rng.Below(4);
    if (roll == 0) p.raw_text = "I cannot tell from the audio";
    else if (roll == 1) p.raw_text = "The answer is " + p.raw_text + " I think";
  }
  const auto t0 = Clock::now();
  const RunReport r = EvaluateRun(gold, preds, HarnessConfig{});
  const double secs = Since(t0);
  Note(o, r.per_item.size() == kEvalItems, "item count");
  Note(o, secs < kEvalSeconds, Fmt("took %.3f s", secs));
  o.detail = Fmt("%.0f items in %.3f s", static_cast<double>(r.per_item.size()), secs);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"table replay", TableReplay},
      {"perfect predictor", PerfectPredictor},
      {"iou/f1 grid oracle", GridOracle},
      {"reward shape", Rewards},
      {"soft f1", SoftF1},
      {"objective oracles", Objectives},
      {"token allocation", TokenAllocation},
      {"gto brute force", GtoBruteForce},
      {"parser corpus", ParserCorpus},
      {"evaluation throughput", Throughput},
  };
  bool ok = true;
  int idx = 0;
  for (const Criterion& c : criteria) {
    ++idx;
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %2d %-22s %s  %s\n", idx, c.name, out.pass ? "PASS" : "FAIL",
                out.detail.c_str());
    if (idx == 1 && !out.pass) {
      const std::set<std::string> failed(out.failed_cells.begin(), out.failed_cells.end());
      if (failed == kKnownTableDeviations && out.detail.find("took") == std::string::npos) {
        std::printf("             known deviation, recorded; not counted against the run\n");
        continue;
      }
    }
    if (idx == 1 && out.pass && !kKnownTableDeviations.empty()) {
      std::printf("             known deviation no longer reproduces; update the list\n");
      ok = false;
    }
    ok = ok && out.pass;
  }
  std::printf("%s\n", ok ? "acceptance: OK" : "acceptance: FAILED");
  return ok ? 0 : 1;
}
