// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

// Time points, closed spans and span unions on a track timeline, plus the
// fixed-rate mask representation used by the smoothed overlap scores.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tgkit {

using Seconds = double;

inline constexpr double kDefaultMaskResolutionHz = 1.0;

// A non-negative, finite position on the timeline.
class Timestamp {
 public:
  Timestamp() = default;
  // Throws Error(kConstruction) for negative or non-finite input.
  explicit Timestamp(Seconds seconds);

  Seconds seconds() const { return seconds_; }

  friend bool operator==(Timestamp, Timestamp) = default;
  friend auto operator<=>(Timestamp, Timestamp) = default;

 private:
  Seconds seconds_ = 0.0;
};

// A span with start < end. Zero-length spans are rejected.
class Interval {
 public:
  // Throws Error(kConstruction) unless start < end.
  Interval(Timestamp start, Timestamp end);
  Interval(Seconds start, Seconds end);

  Timestamp start() const { return start_; }
  Timestamp end() const { return end_; }
  Seconds length() const { return end_.seconds() - start_.seconds(); }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Timestamp start_;
  Timestamp end_;
};

// An ordered list of intervals. The list is kept exactly as given; call
// normalized() (or Normalize) to obtain the sorted, disjoint union.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> intervals)
      : intervals_(std::move(intervals)) {}

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }

  // Sorted by start and pairwise disjoint with a positive gap between
  // neighbours.
  bool is_normalized() const;
  IntervalSet normalized() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

// Sorts and merges overlapping or abutting spans. Covered length is preserved.
IntervalSet Normalize(std::span<const Interval> raw);

// Total covered length of the union. 0 for an empty set.
Seconds UnionLength(const IntervalSet& s);

// Normalized intersection of the two unions.
IntervalSet Intersect(const IntervalSet& a, const IntervalSet& b);

// Normalized union of both sets.
IntervalSet Unite(const IntervalSet& a, const IntervalSet& b);

// Per-frame values in [0,1] covering [0, duration) at resolution_hz frames per
// second; frame i spans [i/r, (i+1)/r) and has its center at (i+0.5)/r.
class TemporalMask {
 public:
  // Throws Error(kInvalidArgument) when duration/resolution are not positive
  // or values has the wrong length or leaves [0,1].
  TemporalMask(Seconds duration, double resolution_hz, std::vector<double> values);

  // All-zero mask with FrameCount(duration, resolution_hz) frames.
  static TemporalMask Zeros(Seconds duration, double resolution_hz);

  // ceil(duration * resolution_hz), tolerant of representation error in the
  // product (300 * 6.66 style inputs).
  static std::size_t FrameCount(Seconds duration, double resolution_hz);

  Seconds duration() const { return duration_; }
  double resolution_hz() const { return resolution_hz_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  Seconds frame_center(std::size_t i) const {
    return (static_cast<double>(i) + 0.5) / resolution_hz_;
  }

 private:
  Seconds duration_;
  double resolution_hz_;
  std::vector<double> values_;
};

// 1 where the frame center falls inside the half-open union [start, end),
// else 0. Spans reaching past the track are clipped by construction.
TemporalMask Rasterize(const IntervalSet& s, Seconds duration,
                       double resolution_hz = kDefaultMaskResolutionHz);

// Convolution with a Gaussian of std-dev sigma truncated to +-radius and
// renormalized to unit sum. Frames beyond the track count as zero. Output is
// clipped to [0,1].
TemporalMask GaussianSmooth(const TemporalMask& m, Seconds sigma, Seconds radius);

}  // namespace tgkit
