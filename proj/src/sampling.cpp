// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "tgkit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tgkit/error.hpp"

namespace tgkit {

void TransitionProfile::Validate() const {
  const std::size_t expected = TemporalMask::FrameCount(duration, frame_rate_hz);
  if (probs.size() != expected) {
    throw Error(ErrorCode::kInvalidArgument,
                "profile has " + std::to_string(probs.size()) + " frames, expected " +
                    std::to_string(expected));
  }
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "transition probability outside [0,1]");
    }
  }
}

void SamplingConfig::Validate() const {
  if (!(rate_tokens_per_sec > 0.0) || max_tokens < 1 ||
      !(coverage_fraction >= 0.0 && coverage_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid sampling configuration");
  }
}

std::int64_t TokenBudget(Seconds duration, const SamplingConfig& cfg) {
  cfg.Validate();
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw Error(ErrorCode::kInvalidArgument, "duration must be positive");
  }
  const double raw = duration * cfg.rate_tokens_per_sec;
  const double floored = std::floor(raw + 1e-9 * std::max(1.0, raw));
  if (floored >= static_cast<double>(cfg.max_tokens)) return cfg.max_tokens;
  return static_cast<std::int64_t>(floored);
}

std::size_t CoverageCount(std::size_t budget, double coverage_fraction) {
  const double raw = coverage_fraction * static_cast<double>(budget);
  const auto c = static_cast<std::size_t>(std::floor(raw + 0.5 + 1e-9));
  return std::min(c, budget);
}

std::vector<std::size_t> CoverageIndices(std::size_t frames, std::size_t count) {
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    out.push_back(((2 * j + 1) * frames) / (2 * count));
  }
  return out;
}

std::vector<std::size_t> AllocateTokens(const TransitionProfile& profile, std::size_t budget,
                                        const SamplingConfig& cfg) {
  cfg.Validate();
  profile.Validate();
  const std::size_t n = profile.probs.size();
  if (budget == 0) throw Error(ErrorCode::kInvalidArgument, "budget must be at least 1");
  if (budget > n) {
    throw Error(ErrorCode::kBudgetExceedsFrames,
                "budget " + std::to_string(budget) + " exceeds " + std::to_string(n) +
                    " frames");
  }

  const std::size_t coverage = CoverageCount(budget, cfg.coverage_fraction);
  std::vector<std::size_t> picked = CoverageIndices(n, coverage);
  std::vector<bool> taken(n, false);
  for (std::size_t i : picked) taken[i] = true;

  const std::size_t remainder = budget - coverage;
  if (remainder > 0) {
    std::vector<std::size_t> eligible;
    eligible.reserve(n - coverage);
    double mass = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!taken[i]) {
        eligible.push_back(i);
        mass += profile.probs[i];
      }
    }
    auto weight = [&](std::size_t i) { return mass > 0.0 ? profile.probs[i] : 1.0; };
    // Ties go by bit-reversed index so equal weights spread over the track
    // instead of piling up at the start. The order is fixed per n, which keeps
    // the selection monotone in each frame's weight.
    unsigned bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    auto spread = [bits](std::size_t i) {
      std::size_t r = 0;
      for (unsigned b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      return r;
    };
    std::partial_sort(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(remainder),
                      eligible.end(), [&](std::size_t a, std::size_t b) {
                        const double wa = weight(a), wb = weight(b);
                        if (wa != wb) return wa > wb;
                        return spread(a) < spread(b);
                      });
    picked.insert(picked.end(), eligible.begin(),
                  eligible.begin() + static_cast<std::ptrdiff_t>(remainder));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::vector<double> TimeEmbedding(Timestamp t, std::size_t dim, double base) {
  if (dim % 2 != 0) throw Error(ErrorCode::kOddDimension, "embedding dimension must be even");
  if (!(base > 1.0)) throw Error(ErrorCode::kInvalidArgument, "base must exceed 1");
  std::vector<double> out(dim);
  for (std::size_t k = 0; k < dim / 2; ++k) {
    const double freq = std::pow(base, 2.0 * static_cast<double>(k) / static_cast<double>(dim));
    const double angle = t.seconds() / freq;
    out[2 * k] = std::sin(angle);
    out[2 * k + 1] = std::cos(angle);
  }
  return out;
}

}  // namespace tgkit
