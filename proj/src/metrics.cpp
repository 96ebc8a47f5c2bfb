// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "tgkit/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <set>

#include "tgkit/error.hpp"

namespace tgkit {

const char* TaskName(Task task) {
  switch (task) {
    case Task::kTSG: return "TSG";
    case Task::kLTR: return "LTR";
    case Task::kTAD: return "TAD";
    case Task::kGTO: return "GTO";
    case Task::kMTR: return "MTR";
  }
  return "?";
}

Task TaskFromName(std::string_view name) {
  for (Task t : kAllTasks) {
    if (name == TaskName(t)) return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown task '" + std::string(name) + "'");
}

const std::vector<std::string>& SubMetricNames(Task task) {
  static const std::vector<std::string> kTsg = {"onset_hit", "offset_hit"};
  static const std::vector<std::string> kAcc = {"acc"};
  static const std::vector<std::string> kTad = {"meteor", "align"};
  static const std::vector<std::string> kMtr = {"iou", "f1"};
  switch (task) {
    case Task::kTSG: return kTsg;
    case Task::kLTR:
    case Task::kGTO: return kAcc;
    case Task::kTAD: return kTad;
    case Task::kMTR: return kMtr;
  }
  return kAcc;
}

bool HitAtT(Timestamp pred, Timestamp gold, Seconds tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  return std::abs(pred.seconds() - gold.seconds()) <= tol;
}

double HitRate(std::span<const ParsedAnswer> preds, std::span<const Timestamp> golds,
               Seconds tol) {
  if (preds.size() != golds.size()) {
    throw Error(ErrorCode::kLengthMismatch, "HitRate: prediction/gold count differs");
  }
  if (preds.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (auto t = preds[i].timestamp(); t && HitAtT(*t, golds[i], tol)) ++hits;
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(preds.size());
}

namespace {

struct Overlap {
  Seconds inter;
  Seconds pred;
  Seconds gold;
};

Overlap Measure(const IntervalSet& p, const IntervalSet& g) {
  if (g.empty()) throw Error(ErrorCode::kMissingGold, "gold interval set is empty");
  return {UnionLength(Intersect(p, g)), UnionLength(p), UnionLength(g)};
}

}  // namespace

double TemporalIoU(const IntervalSet& p, const IntervalSet& g) {
  const Overlap o = Measure(p, g);
  if (p.empty()) return 0.0;
  const Seconds uni = o.pred + o.gold - o.inter;
  return uni > 0.0 ? std::clamp(o.inter / uni, 0.0, 1.0) : 0.0;
}

double TemporalF1(const IntervalSet& p, const IntervalSet& g) {
  const Overlap o = Measure(p, g);
  if (p.empty()) return 0.0;
  return std::clamp(2.0 * o.inter / (o.pred + o.gold), 0.0, 1.0);
}

double McqAccuracy(std::span<const ParsedAnswer> preds, std::span<const char> golds) {
  if (preds.size() != golds.size()) {
    throw Error(ErrorCode::kLengthMismatch, "McqAccuracy: prediction/gold count differs");
  }
  if (preds.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (auto l = preds[i].letter(); l && *l == golds[i]) ++correct;
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(preds.size());
}

std::vector<std::string> MeteorTokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    while (!cur.empty() && cur.back() == '\'') cur.pop_back();
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) {
      cur.push_back(static_cast<char>(std::tolower(u)));
    } else if (c == '\'' && !cur.empty()) {
      cur.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return out;
}

namespace {

// Aligns unmatched candidate tokens to unmatched reference tokens that compare
// equal under `key`.
void AlignStage(const std::vector<std::string>& cand_keys,
                const std::vector<std::string>& ref_keys,
                std::vector<std::optional<std::size_t>>& cand_to_ref,
                std::vector<bool>& ref_used) {
  std::optional<std::size_t> prev_ref;
  for (std::size_t i = 0; i < cand_keys.size(); ++i) {
    if (cand_to_ref[i]) {
      prev_ref = cand_to_ref[i];
      continue;
    }
    std::optional<std::size_t> pick;
    if (prev_ref && *prev_ref + 1 < ref_keys.size() && !ref_used[*prev_ref + 1] &&
        ref_keys[*prev_ref + 1] == cand_keys[i]) {
      pick = *prev_ref + 1;
    } else {
      for (std::size_t j = 0; j < ref_keys.size(); ++j) {
        if (!ref_used[j] && ref_keys[j] == cand_keys[i]) {
          pick = j;
          break;
        }
      }
    }
    if (pick) {
      cand_to_ref[i] = pick;
      ref_used[*pick] = true;
    }
    prev_ref = pick;
  }
}

}  // namespace

double Meteor(std::span<const std::string> candidate, std::span<const std::string> reference,
              const MeteorParams& params) {
  if (reference.empty()) throw Error(ErrorCode::kEmptyReference, "METEOR reference is empty");
  if (candidate.empty()) return 0.0;

  std::vector<std::string> cand(candidate.begin(), candidate.end());
  std::vector<std::string> ref(reference.begin(), reference.end());
  std::vector<std::optional<std::size_t>> cand_to_ref(cand.size());
  std::vector<bool> ref_used(ref.size(), false);

  AlignStage(cand, ref, cand_to_ref, ref_used);
  std::vector<std::string> cand_stems, ref_stems;
  cand_stems.reserve(cand.size());
  ref_stems.reserve(ref.size());
  for (const auto& w : cand) cand_stems.push_back(PorterStem(w));
  for (const auto& w : ref) ref_stems.push_back(PorterStem(w));
  AlignStage(cand_stems, ref_stems, cand_to_ref, ref_used);

  std::size_t matches = 0;
  std::size_t chunks = 0;
  std::optional<std::size_t> prev;
  for (const auto& m : cand_to_ref) {
    if (m) {
      ++matches;
      if (!prev || *m != *prev + 1) ++chunks;
    }
    prev = m;
  }
  if (matches == 0) return 0.0;

  const double p = static_cast<double>(matches) / static_cast<double>(cand.size());
  const double r = static_cast<double>(matches) / static_cast<double>(ref.size());
  const double fmean = p * r / (params.alpha * p + (1.0 - params.alpha) * r);
  const double frag = static_cast<double>(chunks) / static_cast<double>(matches);
  const double penalty = params.gamma * std::pow(frag, params.beta);
  return fmean * (1.0 - penalty);
}

double AlignCosine(std::span<const double> audio_emb, std::span<const double> text_emb) {
  if (audio_emb.size() != text_emb.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding dimensions differ");
  }
  double dot = 0.0, na = 0.0, nt = 0.0;
  for (std::size_t i = 0; i < audio_emb.size(); ++i) {
    dot += audio_emb[i] * text_emb[i];
    na += audio_emb[i] * audio_emb[i];
    nt += text_emb[i] * text_emb[i];
  }
  if (na == 0.0 || nt == 0.0) throw Error(ErrorCode::kZeroVector, "zero-norm embedding");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nt)), -1.0, 1.0);
}

double RoundHalfUp1(double value) {
  const double scaled = value * 10.0;
  const double nudge = 1e-9 * std::max(1.0, std::abs(scaled));
  return std::floor(scaled + 0.5 + nudge) / 10.0;
}

MetricsReport Aggregate(std::span<const TaskScores> per_task) {
  MetricsReport report;
  std::set<Task> seen;
  for (const TaskScores& ts : per_task) {
    if (!seen.insert(ts.task).second) {
      throw Error(ErrorCode::kDuplicateTask,
                  std::string("task ") + TaskName(ts.task) + " appears twice");
    }
    const auto& names = SubMetricNames(ts.task);
    if (ts.sub_metrics.size() != names.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("task ") + TaskName(ts.task) + " has wrong sub-metrics");
    }
    for (const auto& n : names) {
      if (!ts.sub_metrics.contains(n)) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string("task ") + TaskName(ts.task) + " is missing " + n);
      }
    }
  }

  double sum = 0.0;
  std::size_t count = 0;
  for (Task t : kAllTasks) {
    auto it = std::find_if(per_task.begin(), per_task.end(),
                           [t](const TaskScores& s) { return s.task == t; });
    if (it == per_task.end()) continue;
    double task_sum = 0.0;
    for (const auto& name : SubMetricNames(t)) {
      const double v = it->sub_metrics.at(name);
      task_sum += v;
      sum += v;
      ++count;
    }
    report.task_avgs[t] = task_sum / static_cast<double>(SubMetricNames(t).size());
    report.per_task.push_back(*it);
  }
  report.total_avg = count > 0 ? sum / static_cast<double>(count) : 0.0;
  report.complete = report.per_task.size() == std::size(kAllTasks);
  return report;
}

}  // namespace tgkit
