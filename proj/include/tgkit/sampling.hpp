// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

// Audio-token budgets, transition-aware token placement and absolute-time
// sinusoidal embeddings.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tgkit/temporal.hpp"

namespace tgkit {

struct TransitionProfile {
  std::vector<double> probs;  // one per frame, each in [0,1]
  double frame_rate_hz = 1.0;
  Seconds duration = 0.0;

  // Throws kInvalidArgument when the frame count or a probability is off.
  void Validate() const;
};

struct SamplingConfig {
  double rate_tokens_per_sec = 6.66;
  std::int64_t max_tokens = 2000;
  double coverage_fraction = 0.5;

  void Validate() const;
};

// min(floor(duration * rate), max_tokens). The floor absorbs binary
// representation error, so 300 s at 3.33 tokens/s is 999, not 998.
std::int64_t TokenBudget(Seconds duration, const SamplingConfig& cfg = {});

// Number of coverage slots: round-half-up(coverage_fraction * budget).
std::size_t CoverageCount(std::size_t budget, double coverage_fraction);

// Coverage slots at the centers of `count` equal bins over `frames`:
// floor((2j+1) * frames / (2 count)). Consecutive slots are at most
// ceil(frames / count) apart; the first and last frames are included once
// count >= frames / 2.
std::vector<std::size_t> CoverageIndices(std::size_t frames, std::size_t count);

// Picks `budget` distinct frames, ascending. Coverage slots are placed first;
// the remaining tokens go to the other frames by largest-remainder
// apportionment proportional to probs, capped at one token per frame. Because
// every quota shares the same scale, that apportionment selects the heaviest
// frames. Ties go by bit-reversed frame index so they spread out. An
// all-zero profile falls back to equal weights. Throws kBudgetExceedsFrames
// when budget > frame count and kInvalidArgument when budget is 0.
std::vector<std::size_t> AllocateTokens(const TransitionProfile& profile, std::size_t budget,
                                        const SamplingConfig& cfg = {});

inline constexpr double kDefaultTimeEmbeddingBase = 10000.0;

// Interleaved (sin(t / base^(2k/dim)), cos(t / base^(2k/dim))) for
// k = 0 .. dim/2 - 1. Throws kOddDimension, kInvalidArgument (base <= 1).
std::vector<double> TimeEmbedding(Timestamp t, std::size_t dim,
                                  double base = kDefaultTimeEmbeddingBase);

}  // namespace tgkit
