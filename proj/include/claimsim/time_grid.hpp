// Copyright 2026 The claimsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace claimsim {

/// Default discretization step: one day, in years.
inline constexpr double kDefaultStep = 1.0 / 365.0;

/// Uniform time grid t0 < t0 + h < ... < t_end. The step passed in is
/// snapped so that an integer number of steps spans [t0, t_end] exactly.
class TimeGrid {
 public:
  /// Position of a time inside the grid: points[cell] <= t <= points[cell+1]
  /// and t = points[cell] + fraction * step.
  struct Location {
    std::size_t cell;
    double fraction;
  };

  TimeGrid(double t0, double t_end, double step = kDefaultStep);

  double t0() const noexcept { return t0_; }
  double t_end() const noexcept { return points_.back(); }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::size_t cells() const noexcept { return points_.size() - 1; }
  double operator[](std::size_t k) const noexcept { return points_[k]; }
  std::span<const double> points() const noexcept { return points_; }

  bool contains(double t) const noexcept;
  /// Throws OutOfRangeError when t is outside [t0, t_end].
  Location locate(double t) const;
  /// Index of the grid node equal to t (up to rounding), if any.
  std::optional<std::size_t> node_index(double t) const noexcept;

  /// Same span, step divided by `factor`.
  TimeGrid refined(int factor) const;

  /// Linear interpolation of per-node values at t.
  double interpolate(std::span<const double> values, double t) const;

  /// Integral over [a, b] of the piecewise-linear interpolant of per-node
  /// values (exact for that interpolant; the composite trapezoid on nodes).
  double integrate(std::span<const double> values, double a, double b) const;

  bool operator==(const TimeGrid& other) const noexcept {
    return t0_ == other.t0_ && step_ == other.step_ &&
           points_.size() == other.points_.size();
  }

 private:
  double tolerance() const noexcept;

  double t0_;
  double step_;
  std::vector<double> points_;
};

}  // namespace claimsim
