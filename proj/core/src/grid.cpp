#include "sdlq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdlq/errors.hpp"

namespace sdlq {

SamplingGrid::SamplingGrid(std::vector<double> s) : s_(std::move(s)) {
  h_.resize(s_.size() - 1);
  for (std::size_t i = 0; i + 1 < s_.size(); ++i) {
    h_[i] = s_[i + 1] - s_[i];
    if (!(h_[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveDuration,
                  "sample times not strictly increasing at index " + std::to_string(i));
    }
  }
  norm_delta_ = *std::max_element(h_.begin(), h_.end());
}

SamplingGrid SamplingGrid::uniform(Index intervals, double a, double b) {
  if (!(a < b)) {
    throw Error(ErrorCode::InvalidInterval, "uniform grid requires a < b");
  }
  if (intervals < 1) {
    throw Error(ErrorCode::InvalidInput, "uniform grid requires at least one interval");
  }
  const auto n = static_cast<std::size_t>(intervals);
  const double step = (b - a) / static_cast<double>(intervals);
  std::vector<double> s(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = a + static_cast<double>(i) * step;
  }
  s[n] = b;
  return SamplingGrid(std::move(s));
}

SamplingGrid SamplingGrid::from_durations(std::span<const double> h, double a, double b) {
  if (!(a < b)) {
    throw Error(ErrorCode::InvalidInterval, "grid requires a < b");
  }
  if (h.empty()) {
    throw Error(ErrorCode::InvalidInput, "grid requires at least one duration");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !std::isfinite(h[i])) {
      throw Error(ErrorCode::NonPositiveDuration, "duration h_" + std::to_string(i) + " is not positive");
    }
    total += h[i];
  }
  if (std::abs(total - (b - a)) > kDurationTolerance * std::abs(b - a)) {
    throw Error(ErrorCode::DurationMismatch, "durations sum to " + std::to_string(total) +
                                                 " but the horizon length is " + std::to_string(b - a));
  }
  std::vector<double> s(h.size() + 1);
  s[0] = a;
  for (std::size_t i = 0; i < h.size(); ++i) {
    s[i + 1] = s[i] + h[i];
  }
  s.back() = b;
  return SamplingGrid(std::move(s));
}

SamplingGrid SamplingGrid::tail(Index j) const {
  if (j < 0 || j >= intervals()) {
    throw Error(ErrorCode::IndexOutOfRange, "tail index " + std::to_string(j));
  }
  return SamplingGrid(std::vector<double>(s_.begin() + j, s_.end()));
}

double SamplingGrid::min_duration() const noexcept {
  return *std::min_element(h_.begin(), h_.end());
}

Index SamplingGrid::locate(double t) const {
  if (t <= s_.front()) {
    return 0;
  }
  if (t >= s_.back()) {
    return intervals() - 1;
  }
  auto it = std::upper_bound(s_.begin(), s_.end(), t);
  return static_cast<Index>(it - s_.begin()) - 1;
}

}  // namespace sdlq
