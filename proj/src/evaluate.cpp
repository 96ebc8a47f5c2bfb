// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <set>
#include <thread>
#include <unordered_map>

#include "json_util.hpp"
#include "tgkit/harness.hpp"

namespace tgkit {

namespace {

using internal::Json;

std::string AllowedLetters(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n && i < 6; ++i) s.push_back(static_cast<char>('A' + i));
  return s;
}

struct Scored {
  ItemResult result;
  bool missing_embedding = false;
};

Scored ScoreItem(const QAItem& item, const PredictionRecord* pred, const HarnessConfig& cfg) {
  Scored out;
  ItemResult& r = out.result;
  r.item_id = item.id;
  r.task = item.task;
  r.has_prediction = pred != nullptr;
  const std::string text = pred ? pred->raw_text : std::string();
  auto& s = r.scores;

  switch (item.task) {
    case Task::kTSG: {
      const ParsedAnswer a = ParseTimestamp(text);
      const Timestamp gold = std::get<Timestamp>(item.gold);
      r.format_ok = a.format_ok();
      r.parsed = FormatAnswer(a);
      s["hit"] = 0.0;
      if (auto t = a.timestamp()) {
        s["hit"] = HitAtT(*t, gold, cfg.metrics.tolerance) ? 1.0 : 0.0;
        s["abs_error"] = std::abs(t->seconds() - gold.seconds());
        r.out_of_range = t->seconds() > item.duration;
      }
      s["reward"] = TsgReward(a, gold, item.duration, cfg.reward);
      break;
    }
    case Task::kLTR:
    case Task::kGTO: {
      const ParsedAnswer a = item.task == Task::kLTR
                                 ? ParseChoice(text, AllowedLetters(item.options.size()))
                                 : ParseOrdering(text);
      r.format_ok = a.format_ok();
      r.parsed = FormatAnswer(a);
      const auto l = a.letter();
      s["correct"] = l && *l == std::get<OptionLetter>(item.gold).letter ? 1.0 : 0.0;
      break;
    }
    case Task::kTAD: {
      const auto cand = MeteorTokenize(text);
      const auto ref = MeteorTokenize(std::get<std::string>(item.gold));
      r.format_ok = !cand.empty();
      r.parsed = r.format_ok ? text : std::string();
      s["meteor"] = ref.empty() ? 0.0 : Meteor(cand, ref, cfg.metrics.meteor);
      s["align"] = 0.0;
      if (pred && pred->audio_emb && pred->text_emb) {
        try {
          s["align"] = AlignCosine(*pred->audio_emb, *pred->text_emb);
        } catch (const Error& e) {
          throw Error(ErrorCode::kSchema, "prediction " + item.id + ": " + e.what());
        }
      } else {
        out.missing_embedding = true;
      }
      break;
    }
    case Task::kMTR: {
      const ParsedAnswer a = ParseIntervalList(text);
      const IntervalSet& gold = std::get<IntervalSet>(item.gold);
      r.format_ok = a.format_ok();
      r.parsed = FormatAnswer(a);
      s["iou"] = 0.0;
      s["f1"] = 0.0;
      s["soft_f1"] = 0.0;
      if (auto p = a.intervals()) {
        s["iou"] = TemporalIoU(*p, gold);
        s["f1"] = TemporalF1(*p, gold);
        s["soft_f1"] = MtrSoftF1(*p, gold, item.duration, cfg.reward);
        r.out_of_range = AnyOutOfRange(*p, item.duration);
      }
      s["reward"] = MtrReward(a, gold, item.duration, cfg.reward);
      break;
    }
  }
  return out;
}

unsigned ThreadCount(const HarnessConfig& cfg, std::size_t work) {
  unsigned n = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  n = std::max(1u, n);
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(1, work / 64)));
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

MetricsReport Summarize(std::span<const QAItem> gold, const std::vector<ItemResult>& results) {
  std::map<Task, std::map<std::string, std::vector<double>>> cols;
  std::map<Task, std::size_t> counts;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const QAItem& item = gold[i];
    const auto& sc = results[i].scores;
    auto& c = cols[item.task];
    ++counts[item.task];
    switch (item.task) {
      case Task::kTSG:
        c[*item.tsg_mode == TsgMode::kFirstOnset ? "onset_hit" : "offset_hit"].push_back(
            100.0 * sc.at("hit"));
        break;
      case Task::kLTR:
      case Task::kGTO:
        c["acc"].push_back(100.0 * sc.at("correct"));
        break;
      case Task::kTAD:
        c["meteor"].push_back(100.0 * sc.at("meteor"));
        c["align"].push_back(100.0 * sc.at("align"));
        break;
      case Task::kMTR:
        c["iou"].push_back(100.0 * sc.at("iou"));
        c["f1"].push_back(100.0 * sc.at("f1"));
        break;
    }
  }
  std::vector<TaskScores> per_task;
  for (const auto& [task, c] : cols) {
    TaskScores ts;
    ts.task = task;
    ts.n_items = counts[task];
    for (const std::string& name : SubMetricNames(task)) {
      auto it = c.find(name);
      ts.sub_metrics[name] = it == c.end() ? 0.0 : Mean(it->second);
    }
    per_task.push_back(std::move(ts));
  }
  return Aggregate(per_task);
}

}  // namespace

RunReport EvaluateRun(std::span<const QAItem> gold_in, std::span<const PredictionRecord> preds,
                      const HarnessConfig& cfg, std::optional<Task> only_task) {
  std::vector<QAItem> gold;
  std::set<std::string> all_ids;
  for (const QAItem& item : gold_in) {
    if (!all_ids.insert(item.id).second) {
      throw Error(ErrorCode::kSchema, "duplicate gold id '" + item.id + "'");
    }
    if (!only_task || item.task == *only_task) gold.push_back(item);
  }
  std::sort(gold.begin(), gold.end(),
            [](const QAItem& a, const QAItem& b) { return a.id < b.id; });

  std::unordered_map<std::string, const PredictionRecord*> by_id;
  by_id.reserve(preds.size());
  for (const PredictionRecord& p : preds) {
    if (!all_ids.contains(p.item_id)) {
      throw Error(ErrorCode::kUnknownItem, "prediction for unknown item '" + p.item_id + "'");
    }
    if (!by_id.emplace(p.item_id, &p).second) {
      throw Error(ErrorCode::kDuplicatePrediction, "duplicate prediction for '" + p.item_id + "'");
    }
  }

  std::vector<Scored> scored(gold.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(ThreadCount(cfg, gold.size()));
  auto worker = [&](std::size_t w) {
    try {
      for (std::size_t i = next++; i < gold.size(); i = next++) {
        auto it = by_id.find(gold[i].id);
        scored[i] = ScoreItem(gold[i], it == by_id.end() ? nullptr : it->second, cfg);
      }
    } catch (...) {
      errors[w] = std::current_exception();
      next = gold.size();
    }
  };
  if (errors.size() == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < errors.size(); ++w) pool.emplace_back(worker, w);
    for (std::thread& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  RunReport report;
  report.tolerance = cfg.metrics.tolerance;
  std::size_t format_errors = 0, timed_valid = 0, out_of_range = 0;
  report.per_item.reserve(scored.size());
  for (Scored& s : scored) {
    ItemResult& r = s.result;
    if (!r.has_prediction) ++report.missing_predictions;
    if (s.missing_embedding) ++report.missing_embeddings;
    if (!r.format_ok) ++format_errors;
    if ((r.task == Task::kTSG || r.task == Task::kMTR) && r.format_ok) {
      ++timed_valid;
      if (r.out_of_range) ++out_of_range;
    }
    report.per_item.push_back(std::move(r));
  }
  report.metrics = Summarize(gold, report.per_item);
  report.format_error_rate =
      gold.empty() ? 0.0 : static_cast<double>(format_errors) / static_cast<double>(gold.size());
  report.out_of_range_rate =
      timed_valid == 0 ? 0.0 : static_cast<double>(out_of_range) / static_cast<double>(timed_valid);
  return report;
}

RunReport EvaluateRunFiles(const std::string& gold_path, const std::string& pred_path,
                           const std::string& config_path, std::optional<Task> only_task) {
  const HarnessConfig cfg = LoadConfig(config_path);
  const auto gold = ParseGoldJsonl(ReadTextFile(gold_path), gold_path);
  const auto preds = ParsePredictionJsonl(ReadTextFile(pred_path), pred_path);
  return EvaluateRun(gold, preds, cfg, only_task);
}

OutOfRangeStats ComputeOutOfRangeStats(const RunReport& report, std::span<const QAItem> gold) {
  std::unordered_map<std::string, const QAItem*> by_id;
  for (const QAItem& item : gold) by_id.emplace(item.id, &item);
  OutOfRangeStats stats;
  std::size_t flagged = 0;
  for (const ItemResult& r : report.per_item) {
    if ((r.task != Task::kTSG && r.task != Task::kMTR) || r.parsed.empty()) continue;
    auto it = by_id.find(r.item_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kUnknownItem, "report item '" + r.item_id + "' not in gold");
    }
    const Seconds duration = it->second->duration;
    bool out = false;
    if (r.task == Task::kTSG) {
      const auto t = ParseTimestamp(r.parsed).timestamp();
      out = t && t->seconds() > duration;
    } else if (auto s = ParseIntervalList(r.parsed).intervals()) {
      out = AnyOutOfRange(*s, duration);
    }
    stats.flags.emplace_back(r.item_id, out);
    if (out) ++flagged;
  }
  stats.considered = stats.flags.size();
  stats.fraction = stats.considered == 0
                       ? 0.0
                       : static_cast<double>(flagged) / static_cast<double>(stats.considered);
  return stats;
}

std::vector<double> SlidingMean(std::span<const double> series, std::size_t window) {
  if (window == 0) throw Error(ErrorCode::kInvalidArgument, "window must be >= 1");
  const std::size_t left = (window - 1) / 2;
  const std::size_t right = window / 2;
  const std::size_t n = series.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + series[i];
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= left ? i - left : 0;
    const std::size_t hi = std::min(n, i + right + 1);
    out[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }
  return out;
}

std::string RunReportToJson(const RunReport& report) {
  Json tasks = Json::array();
  for (const TaskScores& ts : report.metrics.per_task) {
    tasks.push_back({{"task", TaskName(ts.task)},
                     {"n_items", ts.n_items},
                     {"sub_metrics", ts.sub_metrics},
                     {"avg", report.metrics.task_avgs.at(ts.task)}});
  }
  Json items = Json::array();
  for (const ItemResult& r : report.per_item) {
    items.push_back({{"id", r.item_id},
                     {"task", TaskName(r.task)},
                     {"has_prediction", r.has_prediction},
                     {"format_ok", r.format_ok},
                     {"out_of_range", r.out_of_range},
                     {"parsed", r.parsed},
                     {"scores", r.scores}});
  }
  Json j = {{"schema", kReportSchema},
            {"version", kSchemaVersion},
            {"tolerance", report.tolerance},
            {"total_avg", report.metrics.total_avg},
            {"complete", report.metrics.complete},
            {"out_of_range_rate", report.out_of_range_rate},
            {"format_error_rate", report.format_error_rate},
            {"missing_predictions", report.missing_predictions},
            {"missing_embeddings", report.missing_embeddings},
            {"tasks", tasks},
            {"items", items}};
  return j.dump() + "\n";
}

RunReport RunReportFromJson(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("report: invalid JSON: ") + e.what());
  }
  const internal::Record root(j, "report");
  if (root.String("schema") != kReportSchema) root.Fail("schema", "not a report");
  if (root.Number("version") != kSchemaVersion) root.Fail("version", "unsupported version");
  RunReport report;
  report.tolerance = root.Number("tolerance");
  report.out_of_range_rate = root.Number("out_of_range_rate");
  report.format_error_rate = root.Number("format_error_rate");
  report.missing_predictions = static_cast<std::size_t>(root.Number("missing_predictions"));
  report.missing_embeddings = static_cast<std::size_t>(root.Number("missing_embeddings"));

  std::vector<TaskScores> per_task;
  try {
    for (const Json& t : root.Raw("tasks")) {
      TaskScores ts;
      ts.task = TaskFromName(t.at("task").get<std::string>());
      ts.n_items = t.at("n_items").get<std::size_t>();
      ts.sub_metrics = t.at("sub_metrics").get<std::map<std::string, double>>();
      per_task.push_back(std::move(ts));
    }
    for (const Json& it : root.Raw("items")) {
      ItemResult r;
      r.item_id = it.at("id").get<std::string>();
      r.task = TaskFromName(it.at("task").get<std::string>());
      r.has_prediction = it.at("has_prediction").get<bool>();
      r.format_ok = it.at("format_ok").get<bool>();
      r.out_of_range = it.at("out_of_range").get<bool>();
      r.parsed = it.at("parsed").get<std::string>();
      r.scores = it.at("scores").get<std::map<std::string, double>>();
      report.per_item.push_back(std::move(r));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("report: ") + e.what());
  }
  report.metrics = Aggregate(per_task);
  return report;
}

namespace {

std::string Cell(const MetricsReport& m, Task task, const char* sub) {
  for (const TaskScores& ts : m.per_task) {
    if (ts.task != task) continue;
    const double v = sub ? ts.sub_metrics.at(sub) : m.task_avgs.at(task);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", RoundHalfUp1(v));
    return buf;
  }
  return "-";
}

}  // namespace

std::string RenderTable(const MetricsReport& m, Seconds tolerance, std::string_view row_label) {
  struct Col {
    const char* group;
    const char* head;
    Task task;
    const char* sub;
  };
  const Col cols[] = {
      {"TSG", "Onset", Task::kTSG, "onset_hit"}, {"", "Offset", Task::kTSG, "offset_hit"},
      {"", "Avg", Task::kTSG, nullptr},          {"LTR", "Acc", Task::kLTR, "acc"},
      {"TAD", "METEOR", Task::kTAD, "meteor"},   {"", "CLAP", Task::kTAD, "align"},
      {"", "Avg", Task::kTAD, nullptr},          {"GTO", "Acc", Task::kGTO, "acc"},
      {"MTR", "IoU", Task::kMTR, "iou"},         {"", "F1", Task::kMTR, "f1"},
      {"", "Avg", Task::kMTR, nullptr},
  };
  const int label_w = static_cast<int>(std::max<std::size_t>(row_label.size(), 5));
  std::string l1, l2, l3;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-*s", label_w, "");
  l1 += buf;
  std::snprintf(buf, sizeof(buf), "%-*s", label_w, "Model");
  l2 += buf;
  std::snprintf(buf, sizeof(buf), "%-*.*s", label_w, static_cast<int>(row_label.size()),
                row_label.data());
  l3 += buf;
  for (const Col& c : cols) {
    std::snprintf(buf, sizeof(buf), " %7s", c.group);
    l1 += buf;
    std::snprintf(buf, sizeof(buf), " %7s", c.head);
    l2 += buf;
    std::snprintf(buf, sizeof(buf), " %7s", Cell(m, c.task, c.sub).c_str());
    l3 += buf;
  }
  char total[32];
  std::snprintf(total, sizeof(total), "%.1f", RoundHalfUp1(m.total_avg));
  std::snprintf(buf, sizeof(buf), " %7s", "");
  l1 += buf;
  std::snprintf(buf, sizeof(buf), " %7s", "Total");
  l2 += buf;
  std::snprintf(buf, sizeof(buf), " %7s", m.per_task.empty() ? "-" : total);
  l3 += buf;
  std::snprintf(buf, sizeof(buf), "Hit tolerance: %gs%s\n", tolerance,
                m.complete ? "" : "  (incomplete: Total averages the tasks present)");
  return l1 + "\n" + l2 + "\n" + l3 + "\n" + buf;
}

}  // namespace tgkit
