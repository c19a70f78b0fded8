#pragma once

#include <span>
#include <vector>

#include "sdlq/types.hpp"

namespace sdlq {

/// Subdivision a = s_0 < s_1 < ... < s_N = b of the horizon.
///
/// Durations are stored as h_i = s_{i+1} - s_i computed from the sample
/// times, so the difference identity holds exactly in floating point.
class SamplingGrid {
 public:
  /// Relative tolerance for sum(h) against b - a.
  static constexpr double kDurationTolerance = 1e-12;

  static SamplingGrid uniform(Index intervals, double a, double b);
  static SamplingGrid from_durations(std::span<const double> h, double a, double b);

  /// Trailing subgrid s_j..s_N with the same sample times bitwise.
  SamplingGrid tail(Index j) const;

  Index intervals() const noexcept { return static_cast<Index>(h_.size()); }
  double a() const noexcept { return s_.front(); }
  double b() const noexcept { return s_.back(); }
  double h(Index i) const { return h_.at(static_cast<std::size_t>(i)); }
  double s(Index i) const { return s_.at(static_cast<std::size_t>(i)); }
  const std::vector<double>& durations() const noexcept { return h_; }
  const std::vector<double>& times() const noexcept { return s_; }

  /// max_i h_i
  double norm_delta() const noexcept { return norm_delta_; }
  double min_duration() const noexcept;

  /// Index of the interval [s_i, s_{i+1}) containing t; b maps to N-1.
  Index locate(double t) const;

 private:
  explicit SamplingGrid(std::vector<double> s);

  std::vector<double> s_;
  std::vector<double> h_;
  double norm_delta_ = 0.0;
};

}  // namespace sdlq
