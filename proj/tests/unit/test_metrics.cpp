// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "synth.hpp"
#include "tgkit/metrics.hpp"

using namespace tgkit;

namespace {

IntervalSet Set(std::initializer_list<std::pair<double, double>> spans) {
  std::vector<Interval> v;
  for (auto [a, b] : spans) v.emplace_back(a, b);
  return IntervalSet(std::move(v));
}

double MeteorText(const char* cand, const char* ref) {
  return Meteor(MeteorTokenize(cand), MeteorTokenize(ref));
}

TaskScores Scores(Task t, std::map<std::string, double> m) { return {t, std::move(m), 1}; }

}  // namespace

TEST_CASE("hit at tolerance") {
  CHECK(HitAtT(Timestamp(72), Timestamp(72), 3));
  CHECK(HitAtT(Timestamp(75.0), Timestamp(72.0), 3));
  CHECK_FALSE(HitAtT(Timestamp(75.001), Timestamp(72.0), 3));
  CHECK(kDefaultHitTolerance == 3.0);
  CHECK_THROWS_AS(HitAtT(Timestamp(1), Timestamp(1), 0.0), Error);

  const std::vector<ParsedAnswer> preds = {ParseTimestamp("10"), ParseTimestamp("garbage"),
                                           ParseTimestamp("50"), ParseTimestamp("71")};
  const std::vector<Timestamp> golds = {Timestamp(11), Timestamp(20), Timestamp(30),
                                        Timestamp(72)};
  CHECK(HitRate(preds, golds) == doctest::Approx(50.0));
  CHECK_THROWS_AS(HitRate(preds, std::vector<Timestamp>{}), Error);
}

TEST_CASE("temporal iou and f1 examples") {
  CHECK(TemporalIoU(Set({{0, 10}}), Set({{0, 10}})) == 1.0);
  CHECK(TemporalF1(Set({{0, 10}}), Set({{0, 10}})) == 1.0);
  CHECK(TemporalIoU(Set({{0, 10}}), Set({{20, 30}})) == 0.0);
  CHECK(TemporalF1(Set({{0, 10}}), Set({{20, 30}})) == 0.0);
  CHECK(TemporalIoU(Set({{0, 10}}), Set({{5, 15}})) == doctest::Approx(1.0 / 3.0));
  CHECK(TemporalF1(Set({{0, 10}}), Set({{5, 15}})) == doctest::Approx(0.5));
  CHECK(TemporalIoU(IntervalSet(), Set({{5, 15}})) == 0.0);
  CHECK(TemporalF1(IntervalSet(), Set({{5, 15}})) == 0.0);
  try {
    TemporalIoU(Set({{0, 1}}), IntervalSet());
    FAIL("expected MissingGold");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingGold);
  }
  CHECK_THROWS_AS(TemporalF1(Set({{0, 1}}), IntervalSet()), Error);
}

TEST_CASE("property: jaccard-dice inequality, symmetry and normalize invariance") {
  Rng rng(21);
  for (int i = 0; i < 2000; ++i) {
    const IntervalSet p(testing::RandomIntervalsMs(rng, 300.0, 1, 5));
    const IntervalSet g(testing::RandomIntervalsMs(rng, 300.0, 1, 5));
    const double iou = TemporalIoU(p, g);
    const double f1 = TemporalF1(p, g);
    CHECK(iou <= f1 + 1e-12);
    if (iou > 1e-9 && iou < 1.0 - 1e-9) CHECK(iou < f1);
    // Closed form: F1 = 2 IoU / (1 + IoU).
    CHECK(f1 == doctest::Approx(2.0 * iou / (1.0 + iou)).epsilon(1e-9));
    CHECK(TemporalIoU(g, p) == doctest::Approx(iou).epsilon(1e-12));
    CHECK(TemporalF1(g, p) == doctest::Approx(f1).epsilon(1e-12));
    CHECK(TemporalIoU(p.normalized(), g) == doctest::Approx(iou).epsilon(1e-12));
    CHECK(TemporalF1(p, g.normalized()) == doctest::Approx(f1).epsilon(1e-12));
    CHECK(iou >= 0.0);
    CHECK(f1 <= 1.0);
  }
}

TEST_CASE("mcq accuracy") {
  const std::vector<ParsedAnswer> preds = {ParseChoice("A"), ParseChoice("B"), ParseChoice("C"),
                                           ParseChoice("D")};
  CHECK(McqAccuracy(preds, std::vector<char>{'A', 'B', 'C', 'D'}) == 100.0);
  CHECK(McqAccuracy(preds, std::vector<char>{'A', 'B', 'C', 'A'}) == 75.0);
  const std::vector<ParsedAnswer> bad(4, ParseChoice("zzz"));
  CHECK(McqAccuracy(bad, std::vector<char>{'A', 'B', 'C', 'D'}) == 0.0);
  CHECK_THROWS_AS(McqAccuracy(preds, std::vector<char>{'A'}), Error);
}

TEST_CASE("meteor hand evaluations") {
  // P = 1, R = 3/4, one chunk over three matches.
  const double fmean = 0.75 / (0.9 * 1.0 + 0.1 * 0.75);
  const double expected = fmean * (1.0 - 0.5 * std::pow(1.0 / 3.0, 3.0));
  CHECK(MeteorText("the cat sat", "the cat sat down") == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.754985755).epsilon(1e-9));

  CHECK(MeteorText("dog", "the cat sat") == 0.0);
  CHECK(MeteorText("", "the cat sat") == 0.0);
  CHECK_THROWS_AS(MeteorText("the cat", ""), Error);

  // Self match of m tokens: one chunk.
  CHECK(MeteorText("a b c d", "a b c d") ==
        doctest::Approx(1.0 - 0.5 * std::pow(0.25, 3.0)).epsilon(1e-12));

  // Stem stage: no exact matches, two stem matches in one chunk.
  CHECK(MeteorText("drums entering", "drum enters") ==
        doctest::Approx(1.0 - 0.5 * std::pow(0.5, 3.0)).epsilon(1e-12));

  // Swapped order: two chunks over two matches.
  CHECK(MeteorText("sat cat", "cat sat") ==
        doctest::Approx(1.0 - 0.5 * std::pow(1.0, 3.0)).epsilon(1e-12));
}

TEST_CASE("meteor tokenizer") {
  CHECK(MeteorTokenize("The Drums, enter!") == std::vector<std::string>{"the", "drums", "enter"});
  CHECK(MeteorTokenize("it's 133s") == std::vector<std::string>{"it's", "133s"});
}

TEST_CASE("alignment cosine") {
  const std::vector<double> u = {0.6, 0.8};
  CHECK(AlignCosine(u, u) == doctest::Approx(1.0));
  CHECK(AlignCosine(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == 0.0);
  CHECK(AlignCosine(std::vector<double>{1, 1}, std::vector<double>{1, 0}) ==
        doctest::Approx(std::sqrt(0.5)));
  CHECK(AlignCosine(std::vector<double>{1, 1}, std::vector<double>{1, 0}) ==
        doctest::Approx(0.7071).epsilon(1e-4));
  try {
    AlignCosine(std::vector<double>{0, 0}, std::vector<double>{1, 0});
    FAIL("expected ZeroVector");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kZeroVector);
  }
  try {
    AlignCosine(std::vector<double>{1, 0, 0}, std::vector<double>{1, 0});
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
  }
}

TEST_CASE("half-up rounding") {
  CHECK(RoundHalfUp1(65.75) == doctest::Approx(65.8));
  CHECK(RoundHalfUp1(41.775) == doctest::Approx(41.8));
  CHECK(RoundHalfUp1(24.325) == doctest::Approx(24.3));
  // Decimal ties round up even when the binary value sits just below.
  CHECK(RoundHalfUp1((21.7 + 35.4) / 2.0) == doctest::Approx(28.6));
  CHECK(RoundHalfUp1(0.0) == 0.0);
  CHECK(RoundHalfUp1(12.34) == doctest::Approx(12.3));
}

TEST_CASE("aggregate examples") {
  const std::vector<TaskScores> row = {
      Scores(Task::kTSG, {{"onset_hit", 60.0}, {"offset_hit", 71.5}}),
      Scores(Task::kLTR, {{"acc", 56.7}}),
      Scores(Task::kTAD, {{"meteor", 11.2}, {"align", 34.5}}),
      Scores(Task::kGTO, {{"acc", 42.4}}),
      Scores(Task::kMTR, {{"iou", 24.8}, {"f1", 33.1}}),
  };
  const MetricsReport r = Aggregate(row);
  CHECK(RoundHalfUp1(r.task_avgs.at(Task::kTSG)) == doctest::Approx(65.8));
  CHECK(r.total_avg == doctest::Approx(41.775));
  CHECK(RoundHalfUp1(r.total_avg) == doctest::Approx(41.8));
  CHECK(r.complete);
  CHECK(r.per_task.size() == 5);

  std::vector<TaskScores> zeros;
  for (Task t : kAllTasks) {
    TaskScores ts{t, {}, 0};
    for (const auto& n : SubMetricNames(t)) ts.sub_metrics[n] = 0.0;
    zeros.push_back(ts);
  }
  const MetricsReport z = Aggregate(zeros);
  CHECK(z.total_avg == 0.0);
  for (const auto& [t, v] : z.task_avgs) CHECK(v == 0.0);
}

TEST_CASE("aggregate with missing tasks and errors") {
  const std::vector<TaskScores> partial = {Scores(Task::kLTR, {{"acc", 50.0}}),
                                           Scores(Task::kGTO, {{"acc", 70.0}})};
  const MetricsReport r = Aggregate(partial);
  CHECK_FALSE(r.complete);
  CHECK(r.total_avg == doctest::Approx(60.0));
  CHECK_FALSE(r.task_avgs.contains(Task::kTSG));

  const std::vector<TaskScores> dup = {Scores(Task::kLTR, {{"acc", 50.0}}),
                                       Scores(Task::kLTR, {{"acc", 70.0}})};
  try {
    Aggregate(dup);
    FAIL("expected DuplicateTask");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDuplicateTask);
  }
  const std::vector<TaskScores> wrong = {Scores(Task::kTSG, {{"onset_hit", 1.0}})};
  CHECK_THROWS_AS(Aggregate(wrong), Error);
}

TEST_CASE("task names") {
  for (Task t : kAllTasks) CHECK(TaskFromName(TaskName(t)) == t);
  CHECK_THROWS_AS(TaskFromName("XYZ"), Error);
}
