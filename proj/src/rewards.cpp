// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "tgkit/rewards.hpp"

#include <cmath>

#include "tgkit/error.hpp"

namespace tgkit {

void RewardConfig::Validate() const {
  const bool ok = tsg_scale > 0.0 && out_penalty > 0.0 && fmt_penalty > 0.0 &&
                  sigma > 0.0 && radius > 0.0 && resolution_hz > 0.0 && epsilon > 0.0 &&
                  epsilon < 1e-3;
  if (!ok) throw Error(ErrorCode::kInvalidArgument, "invalid reward configuration");
}

namespace {

void RequireDuration(Seconds duration) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw Error(ErrorCode::kInvalidArgument, "duration must be positive");
  }
}

}  // namespace

double TsgReward(const ParsedAnswer& pred, Timestamp gold, Seconds duration,
                 const RewardConfig& cfg) {
  RequireDuration(duration);
  const auto t = pred.timestamp();
  if (!t) return -cfg.fmt_penalty;
  const double base = std::exp(-std::abs(t->seconds() - gold.seconds()) / cfg.tsg_scale);
  const bool out = t->seconds() > duration;
  return base - (out ? cfg.out_penalty : 0.0);
}

double MtrSoftF1(const IntervalSet& p, const IntervalSet& g, Seconds duration,
                 const RewardConfig& cfg) {
  RequireDuration(duration);
  if (g.empty()) throw Error(ErrorCode::kMissingGold, "gold interval set is empty");
  if (p.empty()) return 0.0;
  const TemporalMask ps =
      GaussianSmooth(Rasterize(p, duration, cfg.resolution_hz), cfg.sigma, cfg.radius);
  const TemporalMask gs =
      GaussianSmooth(Rasterize(g, duration, cfg.resolution_hz), cfg.sigma, cfg.radius);
  double inner = 0.0, pp = 0.0, gg = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    inner += ps.values()[i] * gs.values()[i];
    pp += ps.values()[i] * ps.values()[i];
    gg += gs.values()[i] * gs.values()[i];
  }
  return 2.0 * inner / (pp + gg + cfg.epsilon);
}

bool AnyOutOfRange(const IntervalSet& p, Seconds duration) {
  for (const Interval& iv : p.intervals()) {
    if (iv.end().seconds() > duration) return true;
  }
  return false;
}

double MtrReward(const ParsedAnswer& pred, const IntervalSet& gold, Seconds duration,
                 const RewardConfig& cfg) {
  RequireDuration(duration);
  const auto p = pred.intervals();
  if (!p) return -cfg.fmt_penalty;
  const double soft = MtrSoftF1(*p, gold, duration, cfg);
  return soft - (AnyOutOfRange(*p, duration) ? cfg.out_penalty : 0.0);
}

}  // namespace tgkit
