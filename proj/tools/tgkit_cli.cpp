// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

// tgkit command-line front end. Talks to the library only through tgkit.h.
// Exit codes: 0 success, 2 usage or invalid argument, 3 schema/data error,
// 4 I/O error, 5 internal.

#include <cctype>
#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tgkit/tgkit.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitIo = 4;
constexpr int kExitInternal = 5;

struct CliFailure {
  int code;
};

int ExitCodeFor(tgk_status s) {
  switch (s) {
    case TGK_OK: return 0;
    case TGK_INVALID_ARGUMENT: return kExitUsage;
    case TGK_IO: return kExitIo;
    case TGK_INTERNAL: return kExitInternal;
    default: return kExitData;
  }
}

void Check(tgk_status s) {
  if (s == TGK_OK) return;
  std::cerr << "tgkit: " << tgk_status_name(s) << ": " << tgk_last_error_message() << "\n";
  throw CliFailure{ExitCodeFor(s)};
}

// Owns a malloc'd string handed out by the library.
class CString {
 public:
  CString() = default;
  CString(const CString&) = delete;
  CString& operator=(const CString&) = delete;
  ~CString() { tgk_string_free(p_); }
  char** out() { return &p_; }
  const char* get() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

class Config {
 public:
  explicit Config(const std::string& path) { Check(tgk_config_load(path.c_str(), &cfg_)); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;
  ~Config() { tgk_config_free(cfg_); }
  tgk_config* get() { return cfg_; }

 private:
  tgk_config* cfg_ = nullptr;
};

class Report {
 public:
  Report() = default;
  Report(const Report&) = delete;
  Report& operator=(const Report&) = delete;
  ~Report() { tgk_report_free(r_); }
  tgk_report** out() { return &r_; }
  tgk_report* get() { return r_; }

 private:
  tgk_report* r_ = nullptr;
};

void Emit(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    std::cerr << "tgkit: io: cannot write '" << path << "'\n";
    throw CliFailure{kExitIo};
  }
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "tgkit: io: cannot open '" << path << "'\n";
    throw CliFailure{kExitIo};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Numbers separated by whitespace, commas or brackets.
std::vector<double> ParseSeries(const std::string& text) {
  std::vector<double> out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || errno != 0) {
      std::cerr << "tgkit: schema: not a number: '" << tok << "'\n";
      throw CliFailure{kExitData};
    }
    out.push_back(v);
    tok.clear();
  };
  for (char c : text) {
    if (c == ',' || c == '[' || c == ']' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      tok.push_back(c);
    }
  }
  flush();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tgkit: temporal grounding benchmark scoring, rewards, sampling and QA generation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tgk_version()));

  std::string config_path;
  std::string out_path;

  auto* eval = app.add_subcommand("evaluate", "Score a prediction file against a gold file");
  std::string gold_path, pred_path, task_name, label = "model";
  double tolerance = 3.0;
  unsigned threads = 0;
  bool json_to_stdout = false;
  eval->add_option("--gold", gold_path, "Gold JSONL")->required()->check(CLI::ExistingFile);
  eval->add_option("--pred", pred_path, "Prediction JSONL")->required()->check(CLI::ExistingFile);
  eval->add_option("--task", task_name, "Only this task (TSG, LTR, TAD, GTO, MTR)")
      ->check(CLI::IsMember({"TSG", "LTR", "TAD", "GTO", "MTR"}));
  auto* tol_opt = eval->add_option("--tolerance", tolerance, "Hit tolerance in seconds")
                      ->capture_default_str()
                      ->check(CLI::PositiveNumber);
  eval->add_option("--config", config_path, "Config JSON")->check(CLI::ExistingFile);
  eval->add_option("--out", out_path, "Write the report JSON here");
  eval->add_option("--label", label, "Row label in the table")->capture_default_str();
  eval->add_option("--threads", threads, "Worker threads (0: all cores)");
  eval->add_flag("--json", json_to_stdout, "Print the report JSON instead of the table");

  auto* reward = app.add_subcommand("reward", "Rewards for TSG/MTR rollouts");
  std::string rollouts_path;
  reward->add_option("--gold", gold_path, "Gold JSONL")->required()->check(CLI::ExistingFile);
  reward->add_option("--rollouts", rollouts_path, "Rollout JSONL (prediction schema)")
      ->required()
      ->check(CLI::ExistingFile);
  reward->add_option("--config", config_path, "Config JSON")->check(CLI::ExistingFile);
  reward->add_option("--out", out_path, "Output JSONL (default stdout)");

  auto* sample = app.add_subcommand("sample", "Token allocation for transition profiles");
  std::string profiles_path;
  std::int64_t budget = 0;
  sample->add_option("--profiles", profiles_path, "Profile JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  sample->add_option("--budget", budget, "Fixed budget per profile (default: from duration)");
  sample->add_option("--config", config_path, "Config JSON")->check(CLI::ExistingFile);
  sample->add_option("--out", out_path, "Output JSONL (default stdout)");

  auto* genqa = app.add_subcommand("gen-qa", "Build a gold file from feature tables");
  std::string features_path;
  std::uint64_t seed = 0;
  genqa->add_option("--features", features_path, "Feature JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  genqa->add_option("--seed", seed, "Generation seed")->capture_default_str();
  genqa->add_option("--config", config_path, "Config JSON")->check(CLI::ExistingFile);
  genqa->add_option("--out", out_path, "Output gold JSONL (default stdout)");

  auto* report = app.add_subcommand("report", "Re-render a saved report");
  std::string report_path, format = "table";
  report->add_option("--report", report_path, "Report JSON")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--format", format, "table or json")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  report->add_option("--label", label, "Row label in the table")->capture_default_str();
  report->add_option("--out", out_path, "Output file (default stdout)");

  auto* smooth = app.add_subcommand("smooth", "Centered sliding mean of a numeric series");
  std::string series_path;
  std::size_t window = 20;
  smooth->add_option("--input", series_path, "Numbers, one per line or a JSON array")
      ->required()
      ->check(CLI::ExistingFile);
  smooth->add_option("--window", window, "Window size")->capture_default_str();
  smooth->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (eval->parsed()) {
      Config cfg(config_path);
      if (tol_opt->count() > 0) Check(tgk_config_set_tolerance(cfg.get(), tolerance));
      Check(tgk_config_set_threads(cfg.get(), threads));
      int task = TGK_TASK_ALL;
      if (!task_name.empty()) Check(tgk_task_from_name(task_name.c_str(), &task));
      Report r;
      Check(tgk_evaluate_files(gold_path.c_str(), pred_path.c_str(), cfg.get(), task, r.out()));
      CString json;
      Check(tgk_report_to_json(r.get(), json.out()));
      if (!out_path.empty()) Emit(out_path, json.get());
      if (json_to_stdout) {
        Emit("-", json.get());
      } else {
        CString table;
        Check(tgk_report_to_table(r.get(), label.c_str(), table.out()));
        double fmt = 0.0, oor = 0.0;
        Check(tgk_report_rates(r.get(), &fmt, &oor));
        std::printf("%sformat errors: %.4f  out of range: %.4f\n", table.get(), fmt, oor);
      }
    } else if (reward->parsed()) {
      Config cfg(config_path);
      CString out;
      Check(tgk_compute_rewards(gold_path.c_str(), rollouts_path.c_str(), cfg.get(), out.out()));
      Emit(out_path, out.get());
    } else if (sample->parsed()) {
      Config cfg(config_path);
      CString out;
      Check(tgk_sample_profiles(profiles_path.c_str(), cfg.get(), budget, out.out()));
      Emit(out_path, out.get());
    } else if (genqa->parsed()) {
      Config cfg(config_path);
      CString out, stats;
      Check(tgk_generate_qa(features_path.c_str(), cfg.get(), seed, out.out(), stats.out()));
      Emit(out_path, out.get());
      std::fprintf(stderr, "%s\n", stats.get());
    } else if (report->parsed()) {
      const std::string text = Slurp(report_path);
      Report r;
      Check(tgk_report_from_json(text.c_str(), r.out()));
      CString out;
      if (format == "json") {
        Check(tgk_report_to_json(r.get(), out.out()));
      } else {
        Check(tgk_report_to_table(r.get(), label.c_str(), out.out()));
      }
      Emit(out_path, out.get());
    } else if (smooth->parsed()) {
      const std::vector<double> series = ParseSeries(Slurp(series_path));
      std::vector<double> result(series.size());
      Check(tgk_sliding_mean(series.data(), series.size(), window, result.data()));
      std::string text;
      char buf[64];
      for (double v : result) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        text += buf;
      }
      Emit(out_path, text.c_str());
    }
  } catch (const CliFailure& f) {
    return f.code;
  }
  return 0;
}
