// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "tgkit/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tgkit/error.hpp"

namespace tgkit {

TemporalMask BoundaryTargets(const BoundaryTargetSpec& spec) {
  if (!(spec.sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  for (Timestamp b : spec.boundaries) {
    if (b.seconds() > spec.duration) {
      throw Error(ErrorCode::kInvalidArgument, "boundary beyond track duration");
    }
  }
  TemporalMask zeros = TemporalMask::Zeros(spec.duration, spec.frame_rate_hz);
  std::vector<double> y(zeros.size(), 0.0);
  const double denom = 2.0 * spec.sigma * spec.sigma;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double t = zeros.frame_center(i);
    for (Timestamp b : spec.boundaries) {
      const double d = t - b.seconds();
      y[i] = std::max(y[i], std::exp(-d * d / denom));
    }
  }
  return TemporalMask(spec.duration, spec.frame_rate_hz, std::move(y));
}

double BceDiceLoss(std::span<const double> logits, std::span<const double> targets,
                   double smoothing) {
  if (logits.size() != targets.size()) {
    throw Error(ErrorCode::kLengthMismatch, "logits and targets differ in length");
  }
  if (logits.empty()) throw Error(ErrorCode::kInvalidArgument, "empty logits");
  if (!(smoothing > 0.0)) throw Error(ErrorCode::kInvalidArgument, "smoothing must be positive");
  double bce = 0.0, inter = 0.0, psum = 0.0, ysum = 0.0;
  for (std::size_t t = 0; t < logits.size(); ++t) {
    const double z = logits[t];
    const double y = targets[t];
    bce += std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
    const double p = 1.0 / (1.0 + std::exp(-z));
    inter += p * y;
    psum += p;
    ysum += y;
  }
  bce /= static_cast<double>(logits.size());
  const double dice = 1.0 - (2.0 * inter + smoothing) / (psum + ysum + smoothing);
  return bce + dice;
}

double BceDiceLoss(std::span<const double> logits, const TemporalMask& targets,
                   double smoothing) {
  return BceDiceLoss(logits, std::span<const double>(targets.values()), smoothing);
}

double CccLoss(std::span<const double> pred, std::span<const double> gold, double epsilon) {
  if (pred.size() != gold.size()) {
    throw Error(ErrorCode::kLengthMismatch, "pred and gold differ in length");
  }
  if (pred.size() < 2) throw Error(ErrorCode::kTooShort, "CCC needs at least two samples");
  const double n = static_cast<double>(pred.size());
  double mp = 0.0, mg = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    mp += pred[i];
    mg += gold[i];
  }
  mp /= n;
  mg /= n;
  double vp = 0.0, vg = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    vp += (pred[i] - mp) * (pred[i] - mp);
    vg += (gold[i] - mg) * (gold[i] - mg);
    cov += (pred[i] - mp) * (gold[i] - mg);
  }
  vp /= n;
  vg /= n;
  cov /= n;
  return 1.0 - 2.0 * cov / (vp + vg + (mp - mg) * (mp - mg) + epsilon);
}

double BalancedSftLoss(std::span<const SftItem> batch) {
  if (batch.empty()) throw Error(ErrorCode::kInvalidArgument, "empty SFT batch");
  struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::map<std::string, Acc> per_task;
  for (const SftItem& item : batch) {
    if (item.token_nll.size() != item.answer_mask.size()) {
      throw Error(ErrorCode::kLengthMismatch, "token_nll and answer_mask differ in length");
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < item.token_nll.size(); ++j) {
      if (item.answer_mask[j]) {
        sum += item.token_nll[j];
        ++count;
      }
    }
    if (count == 0) {
      throw Error(ErrorCode::kEmptyAnswerMask,
                  "item of task '" + item.task_id + "' has no answer tokens");
    }
    Acc& acc = per_task[item.task_id];
    acc.sum += sum / static_cast<double>(count);
    ++acc.n;
  }
  double total = 0.0;
  for (const auto& [task, acc] : per_task) total += acc.sum / static_cast<double>(acc.n);
  return total / static_cast<double>(per_task.size());
}

}  // namespace tgkit
