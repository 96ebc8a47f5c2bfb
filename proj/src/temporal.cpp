// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "tgkit/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tgkit/error.hpp"

namespace tgkit {

Timestamp::Timestamp(Seconds seconds) : seconds_(seconds) {
  if (!std::isfinite(seconds) || seconds < 0.0) {
    throw Error(ErrorCode::kConstruction,
                "timestamp must be finite and non-negative, got " +
                    std::to_string(seconds));
  }
}

Interval::Interval(Timestamp start, Timestamp end) : start_(start), end_(end) {
  if (!(start < end)) {
    throw Error(ErrorCode::kConstruction,
                "interval requires start < end, got [" +
                    std::to_string(start.seconds()) + ", " +
                    std::to_string(end.seconds()) + "]");
  }
}

Interval::Interval(Seconds start, Seconds end)
    : Interval(Timestamp(start), Timestamp(end)) {}

bool IntervalSet::is_normalized() const {
  for (std::size_t i = 1; i < intervals_.size(); ++i) {
    if (!(intervals_[i - 1].end() < intervals_[i].start())) return false;
  }
  return true;
}

IntervalSet IntervalSet::normalized() const { return Normalize(intervals_); }

IntervalSet Normalize(std::span<const Interval> raw) {
  std::vector<Interval> sorted(raw.begin(), raw.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) {
              if (a.start() != b.start()) return a.start() < b.start();
              return a.end() < b.end();
            });
  std::vector<Interval> merged;
  merged.reserve(sorted.size());
  for (const Interval& iv : sorted) {
    if (!merged.empty() && iv.start() <= merged.back().end()) {
      if (iv.end() > merged.back().end()) {
        merged.back() = Interval(merged.back().start(), iv.end());
      }
    } else {
      merged.push_back(iv);
    }
  }
  return IntervalSet(std::move(merged));
}

Seconds UnionLength(const IntervalSet& s) {
  const IntervalSet& n = s.is_normalized() ? s : s.normalized();
  Seconds total = 0.0;
  for (const Interval& iv : n.intervals()) total += iv.length();
  return total;
}

IntervalSet Intersect(const IntervalSet& a, const IntervalSet& b) {
  const IntervalSet na = a.normalized();
  const IntervalSet nb = b.normalized();
  const auto& x = na.intervals();
  const auto& y = nb.intervals();
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const Timestamp lo = std::max(x[i].start(), y[j].start());
    const Timestamp hi = std::min(x[i].end(), y[j].end());
    if (lo < hi) out.emplace_back(lo, hi);
    if (x[i].end() < y[j].end()) {
      ++i;
    } else {
      ++j;
    }
  }
  // Inputs are disjoint with gaps, so pieces cannot touch; Normalize is only a
  // guard for equal-end advancement.
  return Normalize(out);
}

IntervalSet Unite(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return Normalize(all);
}

std::size_t TemporalMask::FrameCount(Seconds duration, double resolution_hz) {
  if (!(duration > 0.0) || !(resolution_hz > 0.0) || !std::isfinite(duration) ||
      !std::isfinite(resolution_hz)) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask requires positive duration and resolution");
  }
  const double frames = duration * resolution_hz;
  return static_cast<std::size_t>(std::ceil(frames - 1e-9 * std::max(1.0, frames)));
}

TemporalMask::TemporalMask(Seconds duration, double resolution_hz,
                           std::vector<double> values)
    : duration_(duration), resolution_hz_(resolution_hz), values_(std::move(values)) {
  if (values_.size() != FrameCount(duration, resolution_hz)) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask has " + std::to_string(values_.size()) + " frames, expected " +
                    std::to_string(FrameCount(duration, resolution_hz)));
  }
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "mask value outside [0,1]");
    }
  }
}

TemporalMask TemporalMask::Zeros(Seconds duration, double resolution_hz) {
  return TemporalMask(duration, resolution_hz,
                      std::vector<double>(FrameCount(duration, resolution_hz), 0.0));
}

TemporalMask Rasterize(const IntervalSet& s, Seconds duration, double resolution_hz) {
  const std::size_t n = TemporalMask::FrameCount(duration, resolution_hz);
  std::vector<double> values(n, 0.0);
  const IntervalSet norm = s.normalized();
  for (const Interval& iv : norm.intervals()) {
    // First frame with center >= start, first frame with center >= end.
    const double first = std::ceil(iv.start().seconds() * resolution_hz - 0.5);
    const double last = std::ceil(iv.end().seconds() * resolution_hz - 0.5);
    const auto lo = static_cast<std::size_t>(std::clamp(first, 0.0, double(n)));
    const auto hi = static_cast<std::size_t>(std::clamp(last, 0.0, double(n)));
    for (std::size_t i = lo; i < hi; ++i) values[i] = 1.0;
  }
  return TemporalMask(duration, resolution_hz, std::move(values));
}

TemporalMask GaussianSmooth(const TemporalMask& m, Seconds sigma, Seconds radius) {
  if (!(sigma > 0.0) || !(radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma and radius must be positive");
  }
  const double r = m.resolution_hz();
  const auto half = static_cast<std::ptrdiff_t>(std::floor(radius * r + 1e-9));
  std::vector<double> kernel(static_cast<std::size_t>(2 * half + 1));
  double sum = 0.0;
  for (std::ptrdiff_t k = -half; k <= half; ++k) {
    const double dt = static_cast<double>(k) / r;
    const double w = std::exp(-(dt * dt) / (2.0 * sigma * sigma));
    kernel[static_cast<std::size_t>(k + half)] = w;
    sum += w;
  }
  for (double& w : kernel) w /= sum;

  const auto& in = m.values();
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  std::vector<double> out(in.size(), 0.0);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (in[static_cast<std::size_t>(i)] == 0.0) continue;
    const double v = in[static_cast<std::size_t>(i)];
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + half);
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
      out[static_cast<std::size_t>(j)] += v * kernel[static_cast<std::size_t>(j - i + half)];
    }
  }
  for (double& v : out) v = std::clamp(v, 0.0, 1.0);
  return TemporalMask(m.duration(), r, std::move(out));
}

}  // namespace tgkit
