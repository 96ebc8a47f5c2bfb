// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

// Value functions for the encoder and fine-tuning objectives. These compute
// loss values only; gradients and optimisation live in the trainer.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "tgkit/temporal.hpp"

namespace tgkit {

inline constexpr double kDefaultDiceSmoothing = 1.0;
inline constexpr double kDefaultBoundarySigma = 1.5;
inline constexpr double kDefaultBoundaryFrameRate = 5.0;

struct BoundaryTargetSpec {
  std::vector<Timestamp> boundaries;
  Seconds duration = 0.0;
  double frame_rate_hz = kDefaultBoundaryFrameRate;
  Seconds sigma = kDefaultBoundarySigma;
};

// y_t = max_b exp(-(t - b)^2 / (2 sigma^2)) at each frame center t. Multiple
// boundaries combine by max so targets stay in [0,1].
TemporalMask BoundaryTargets(const BoundaryTargetSpec& spec);

// mean_t BCE(sigmoid(z_t), y_t) + 1 - (2 sum p y + s) / (sum p + sum y + s).
// The BCE term is evaluated from logits so saturated logits stay finite.
double BceDiceLoss(std::span<const double> logits, std::span<const double> targets,
                   double smoothing = kDefaultDiceSmoothing);
double BceDiceLoss(std::span<const double> logits, const TemporalMask& targets,
                   double smoothing = kDefaultDiceSmoothing);

// 1 - 2 cov(pred, gold) / (var(pred) + var(gold) + (mean diff)^2 + eps) with
// population moments. Throws kLengthMismatch, kTooShort (< 2 samples).
double CccLoss(std::span<const double> pred, std::span<const double> gold,
               double epsilon = 1e-8);

struct SftItem {
  std::string task_id;
  std::vector<double> token_nll;
  std::vector<bool> answer_mask;
};

// Answer-only, per-sample normalised, task-balanced mean:
//   mean over tasks k of (mean over items i in k of (mean of answer nll_i)).
// Throws kInvalidArgument on an empty batch, kLengthMismatch when an item's
// lists differ in length and kEmptyAnswerMask when an item has no answer token.
double BalancedSftLoss(std::span<const SftItem> batch);

}  // namespace tgkit
