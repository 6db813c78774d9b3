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

#include "claimsim/time_grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "claimsim/error.hpp"

namespace claimsim {

TimeGrid::TimeGrid(double t0, double t_end, double step) : t0_(t0) {
  if (!std::isfinite(t0) || t0 < 0.0) {
    throw ConfigError("must be a finite time >= 0", "grid.t0");
  }
  if (!std::isfinite(t_end) || t_end <= t0) {
    throw ConfigError("must be greater than grid.t0", "grid.t_end");
  }
  if (!std::isfinite(step) || step <= 0.0) {
    throw ConfigError("must be positive", "grid.step");
  }
  const double span = t_end - t0;
  const double cells = std::round(span / step);
  if (cells < 1.0 || std::abs(cells * step - span) > 1e-9 * std::max(1.0, span)) {
    std::ostringstream msg;
    msg << "step " << step << " does not divide [" << t0 << ", " << t_end
        << "] into whole cells";
    throw ConfigError(msg.str(), "grid.step");
  }
  const auto n = static_cast<std::size_t>(cells);
  step_ = span / cells;
  points_.resize(n + 1);
  for (std::size_t k = 0; k < n; ++k) points_[k] = t0 + k * step_;
  points_[n] = t_end;
}

double TimeGrid::tolerance() const noexcept {
  return 1e-12 * std::max(1.0, std::abs(t_end()));
}

bool TimeGrid::contains(double t) const noexcept {
  return t >= t0_ - tolerance() && t <= t_end() + tolerance();
}

TimeGrid::Location TimeGrid::locate(double t) const {
  if (!contains(t)) {
    std::ostringstream msg;
    msg << "time " << t << " outside grid [" << t0_ << ", " << t_end() << "]";
    throw OutOfRangeError(msg.str());
  }
  const double pos = std::clamp((t - t0_) / step_, 0.0,
                                static_cast<double>(cells()));
  auto cell = static_cast<std::size_t>(pos);
  if (cell >= cells()) cell = cells() - 1;
  const double fraction = std::clamp(pos - static_cast<double>(cell), 0.0, 1.0);
  return {cell, fraction};
}

std::optional<std::size_t> TimeGrid::node_index(double t) const noexcept {
  if (!contains(t)) return std::nullopt;
  const double pos = (t - t0_) / step_;
  const double nearest = std::round(pos);
  if (std::abs(pos - nearest) > 1e-9) return std::nullopt;
  return std::min(static_cast<std::size_t>(std::max(nearest, 0.0)), cells());
}

TimeGrid TimeGrid::refined(int factor) const {
  return TimeGrid(t0_, t_end(), step_ / factor);
}

double TimeGrid::interpolate(std::span<const double> values, double t) const {
  const auto [cell, f] = locate(t);
  return values[cell] + f * (values[cell + 1] - values[cell]);
}

double TimeGrid::integrate(std::span<const double> values, double a,
                           double b) const {
  if (b < a) return -integrate(values, b, a);
  const auto lo = locate(a);
  const auto hi = locate(b);
  const double va = values[lo.cell] + lo.fraction * (values[lo.cell + 1] - values[lo.cell]);
  const double vb = values[hi.cell] + hi.fraction * (values[hi.cell + 1] - values[hi.cell]);
  if (lo.cell == hi.cell) return 0.5 * (va + vb) * (b - a);
  double total = 0.5 * (va + values[lo.cell + 1]) * (points_[lo.cell + 1] - a);
  for (std::size_t k = lo.cell + 1; k < hi.cell; ++k) {
    total += 0.5 * (values[k] + values[k + 1]) * step_;
  }
  total += 0.5 * (values[hi.cell] + vb) * (b - points_[hi.cell]);
  return total;
}

}  // namespace claimsim
