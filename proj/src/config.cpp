// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "json_util.hpp"
#include "tgkit/harness.hpp"

namespace tgkit {

namespace {

using internal::Json;
using internal::Record;

// Overwrites `out` when the section has `key`.
void Num(const Record& r, const char* key, double& out) {
  if (r.Has(key)) out = r.Number(key);
}

void Count(const Record& r, const char* key, std::size_t& out) {
  if (!r.Has(key)) return;
  const Json& v = r.Raw(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) r.Fail(key, "expected count");
  out = v.get<std::size_t>();
}

Record Section(const Record& root, const char* name) {
  const Json& v = root.Raw(name);
  return Record(v, root.location() + "." + name);
}

void Checked(const std::string& where, auto&& validate) {
  try {
    validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kSchema, where + ": " + e.what());
  }
}

}  // namespace

HarnessConfig ParseConfig(std::string_view json_text) {
  HarnessConfig cfg;
  if (json_text.find_first_not_of(" \t\r\n") == std::string_view::npos) return cfg;
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("config: invalid JSON: ") + e.what());
  }
  const Record root(j, "config");
  root.OnlyKeys({"reward", "sampling", "metrics", "generation", "objectives", "threads"});

  if (root.Has("reward")) {
    const Record r = Section(root, "reward");
    r.OnlyKeys({"tsg_scale", "out_penalty", "fmt_penalty", "sigma", "radius", "resolution_hz",
                "epsilon"});
    Num(r, "tsg_scale", cfg.reward.tsg_scale);
    Num(r, "out_penalty", cfg.reward.out_penalty);
    Num(r, "fmt_penalty", cfg.reward.fmt_penalty);
    Num(r, "sigma", cfg.reward.sigma);
    Num(r, "radius", cfg.reward.radius);
    Num(r, "resolution_hz", cfg.reward.resolution_hz);
    Num(r, "epsilon", cfg.reward.epsilon);
    Checked(r.location(), [&] { cfg.reward.Validate(); });
  }
  if (root.Has("sampling")) {
    const Record r = Section(root, "sampling");
    r.OnlyKeys({"rate_tokens_per_sec", "max_tokens", "coverage_fraction"});
    Num(r, "rate_tokens_per_sec", cfg.sampling.rate_tokens_per_sec);
    if (r.Has("max_tokens")) {
      const Json& v = r.Raw("max_tokens");
      if (!v.is_number_integer()) r.Fail("max_tokens", "expected integer");
      cfg.sampling.max_tokens = v.get<std::int64_t>();
    }
    Num(r, "coverage_fraction", cfg.sampling.coverage_fraction);
    Checked(r.location(), [&] { cfg.sampling.Validate(); });
  }
  if (root.Has("metrics")) {
    const Record r = Section(root, "metrics");
    r.OnlyKeys({"tolerance", "meteor"});
    Num(r, "tolerance", cfg.metrics.tolerance);
    if (!(cfg.metrics.tolerance > 0.0)) r.Fail("tolerance", "must be positive");
    if (r.Has("meteor")) {
      const Record m = Section(r, "meteor");
      m.OnlyKeys({"alpha", "beta", "gamma"});
      Num(m, "alpha", cfg.metrics.meteor.alpha);
      Num(m, "beta", cfg.metrics.meteor.beta);
      Num(m, "gamma", cfg.metrics.meteor.gamma);
      const MeteorParams& p = cfg.metrics.meteor;
      if (!(p.alpha > 0.0 && p.alpha <= 1.0)) m.Fail("alpha", "must be in (0,1]");
      if (!(p.beta > 0.0)) m.Fail("beta", "must be positive");
      if (!(p.gamma >= 0.0 && p.gamma <= 1.0)) m.Fail("gamma", "must be in [0,1]");
    }
  }
  if (root.Has("generation")) {
    const Record r = Section(root, "generation");
    r.OnlyKeys({"volume_ratio", "k_options", "min_seg", "min_separation", "span_band"});
    GenerationConfig& g = cfg.generation;
    Num(r, "volume_ratio", g.volume_ratio);
    Count(r, "k_options", g.k_options);
    Num(r, "min_seg", g.min_seg);
    Num(r, "min_separation", g.min_separation);
    Num(r, "span_band", g.span_band);
    if (!(g.volume_ratio >= 0.0 && g.volume_ratio <= 1.0)) r.Fail("volume_ratio", "must be in [0,1]");
    if (g.k_options < 2 || g.k_options > 6) r.Fail("k_options", "must be in 2..6");
    if (!(g.min_seg >= 0.0)) r.Fail("min_seg", "must be >= 0");
    if (!(g.min_separation >= 0.0)) r.Fail("min_separation", "must be >= 0");
    if (!(g.span_band >= 0.0)) r.Fail("span_band", "must be >= 0");
  }
  if (root.Has("objectives")) {
    const Record r = Section(root, "objectives");
    r.OnlyKeys({"dice_smoothing", "boundary_sigma", "boundary_frame_rate_hz"});
    Num(r, "dice_smoothing", cfg.objectives.dice_smoothing);
    Num(r, "boundary_sigma", cfg.objectives.boundary_sigma);
    Num(r, "boundary_frame_rate_hz", cfg.objectives.boundary_frame_rate_hz);
    if (!(cfg.objectives.dice_smoothing >= 0.0)) r.Fail("dice_smoothing", "must be >= 0");
    if (!(cfg.objectives.boundary_sigma > 0.0)) r.Fail("boundary_sigma", "must be positive");
    if (!(cfg.objectives.boundary_frame_rate_hz > 0.0)) {
      r.Fail("boundary_frame_rate_hz", "must be positive");
    }
  }
  if (root.Has("threads")) {
    std::size_t t = 0;
    Count(root, "threads", t);
    cfg.threads = static_cast<unsigned>(t);
  }
  return cfg;
}

HarnessConfig LoadConfig(const std::string& path) {
  if (path.empty()) return {};
  return ParseConfig(ReadTextFile(path));
}

std::string ConfigToJson(const HarnessConfig& cfg) {
  const RewardConfig& r = cfg.reward;
  const SamplingConfig& s = cfg.sampling;
  const GenerationConfig& g = cfg.generation;
  Json j = {
      {"reward",
       {{"tsg_scale", r.tsg_scale},
        {"out_penalty", r.out_penalty},
        {"fmt_penalty", r.fmt_penalty},
        {"sigma", r.sigma},
        {"radius", r.radius},
        {"resolution_hz", r.resolution_hz},
        {"epsilon", r.epsilon}}},
      {"sampling",
       {{"rate_tokens_per_sec", s.rate_tokens_per_sec},
        {"max_tokens", s.max_tokens},
        {"coverage_fraction", s.coverage_fraction}}},
      {"metrics",
       {{"tolerance", cfg.metrics.tolerance},
        {"meteor",
         {{"alpha", cfg.metrics.meteor.alpha},
          {"beta", cfg.metrics.meteor.beta},
          {"gamma", cfg.metrics.meteor.gamma}}}}},
      {"generation",
       {{"volume_ratio", g.volume_ratio},
        {"k_options", g.k_options},
        {"min_seg", g.min_seg},
        {"min_separation", g.min_separation},
        {"span_band", g.span_band}}},
      {"objectives",
       {{"dice_smoothing", cfg.objectives.dice_smoothing},
        {"boundary_sigma", cfg.objectives.boundary_sigma},
        {"boundary_frame_rate_hz", cfg.objectives.boundary_frame_rate_hz}}},
      {"threads", cfg.threads},
  };
  return j.dump(2) + "\n";
}

}  // namespace tgkit
