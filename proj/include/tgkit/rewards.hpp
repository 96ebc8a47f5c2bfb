// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

// Scalar rewards for policy-optimization rollouts on the timestamp tasks.

#pragma once

#include "tgkit/answer_parse.hpp"
#include "tgkit/temporal.hpp"

namespace tgkit {

struct RewardConfig {
  Seconds tsg_scale = 15.0;
  double out_penalty = 0.5;
  double fmt_penalty = 1.0;
  Seconds sigma = 15.0;
  Seconds radius = 60.0;
  double resolution_hz = 1.0;
  double epsilon = 1e-8;

  // Throws kInvalidArgument unless every field is positive and epsilon < 1e-3.
  void Validate() const;
};

// exp(-|pred - gold| / tsg_scale) - out_penalty [pred > duration]
// - fmt_penalty [invalid]. An invalid answer scores exactly -fmt_penalty.
double TsgReward(const ParsedAnswer& pred, Timestamp gold, Seconds duration,
                 const RewardConfig& cfg = {});

// 2<P,G> / (|P|^2 + |G|^2 + eps) on Gaussian-smoothed rasterized masks.
// Spans past the track are clipped by the rasterization. Throws kMissingGold.
double MtrSoftF1(const IntervalSet& p, const IntervalSet& g, Seconds duration,
                 const RewardConfig& cfg = {});

// Any predicted span ending past the track (or starting at/after it)
// triggers the out-of-range penalty.
bool AnyOutOfRange(const IntervalSet& p, Seconds duration);

// MtrSoftF1 - out_penalty [any span out of range] - fmt_penalty [invalid].
double MtrReward(const ParsedAnswer& pred, const IntervalSet& gold, Seconds duration,
                 const RewardConfig& cfg = {});

}  // namespace tgkit
