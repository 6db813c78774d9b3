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

#include "claimsim/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "claimsim/error.hpp"
#include "claimsim/rng.hpp"

namespace claimsim {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void check_finite_nonneg(double v, const std::string& field) {
  if (!std::isfinite(v) || v < 0.0) throw ConfigError("must be finite and >= 0", field);
}

std::vector<double> cumulative_trapezoid(const TimeGrid& grid,
                                         const std::vector<double>& right,
                                         const std::vector<double>& left) {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    out[k + 1] = out[k] + 0.5 * (right[k] + left[k + 1]) * (grid[k + 1] - grid[k]);
  }
  return out;
}

// Exact transition of the log-level over one step.
struct OuStep {
  double decay;
  double shift;
  double sd;
};

OuStep ou_step(const LogOrnsteinUhlenbeck& m, double h) {
  if (m.mean_reversion == 0.0) return {1.0, 0.0, m.vol * std::sqrt(h)};
  const double decay = std::exp(-m.mean_reversion * h);
  const double var_factor = -std::expm1(-2.0 * m.mean_reversion * h) /
                            (2.0 * m.mean_reversion);
  return {decay, m.long_run_log_level * (1.0 - decay), m.vol * std::sqrt(var_factor)};
}

}  // namespace

double PiecewiseConstantIntensity::rate_at(double t) const noexcept {
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  if (it == breakpoints.begin()) return 0.0;
  return rates[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
}

double PiecewiseConstantIntensity::integral_to(double t) const noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < breakpoints.size() && breakpoints[i] < t; ++i) {
    const double end = i + 1 < breakpoints.size() ? std::min(breakpoints[i + 1], t) : t;
    total += rates[i] * (end - breakpoints[i]);
  }
  return total;
}

void validate(const IntensityModel& model) {
  std::visit(
      Overloaded{
          [](const ConstantIntensity& m) { check_finite_nonneg(m.rate, "intensity.mu"); },
          [](const PiecewiseConstantIntensity& m) {
            if (m.breakpoints.empty() || m.breakpoints.size() != m.rates.size()) {
              throw ConfigError("breakpoints and rates must be non-empty and equally long",
                                "intensity.breakpoints");
            }
            if (m.breakpoints.front() != 0.0) {
              throw ConfigError("first breakpoint must be 0", "intensity.breakpoints");
            }
            for (std::size_t i = 0; i < m.breakpoints.size(); ++i) {
              if (!std::isfinite(m.breakpoints[i]) ||
                  (i > 0 && m.breakpoints[i] <= m.breakpoints[i - 1])) {
                throw ConfigError("must be finite and strictly increasing",
                                  "intensity.breakpoints");
              }
              check_finite_nonneg(m.rates[i], "intensity.rates");
            }
          },
          [](const LogOrnsteinUhlenbeck& m) {
            check_finite_nonneg(m.mean_reversion, "intensity.mean_reversion");
            check_finite_nonneg(m.vol, "intensity.vol");
            if (!std::isfinite(m.long_run_log_level)) {
              throw ConfigError("must be finite", "intensity.long_run_log_level");
            }
            if (!std::isfinite(m.initial) || m.initial <= 0.0) {
              throw ConfigError("must be finite and > 0", "intensity.initial");
            }
          },
      },
      model);
}

bool is_deterministic(const IntensityModel& model) noexcept {
  if (const auto* ou = std::get_if<LogOrnsteinUhlenbeck>(&model)) return ou->vol == 0.0;
  return true;
}

IntensityPath::IntensityPath(TimeGrid grid, std::vector<double> rate)
    : grid_(std::move(grid)), rate_(std::move(rate)), rate_left_(rate_) {
  if (rate_.size() != grid_.size()) {
    throw ConfigError("intensity path length does not match grid");
  }
  hazard_ = cumulative_trapezoid(grid_, rate_, rate_left_);
}

IntensityPath::IntensityPath(TimeGrid grid, std::vector<double> rate,
                             std::vector<double> rate_left,
                             std::vector<double> hazard)
    : grid_(std::move(grid)),
      rate_(std::move(rate)),
      rate_left_(std::move(rate_left)),
      hazard_(std::move(hazard)) {
  if (rate_.size() != grid_.size() || rate_left_.size() != grid_.size() ||
      hazard_.size() != grid_.size()) {
    throw ConfigError("intensity path length does not match grid");
  }
  if (hazard_.front() != 0.0) throw ConfigError("hazard must start at 0");
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    if (!(rate_[k] >= 0.0) || !(rate_left_[k] >= 0.0)) {
      throw ConfigError("intensity must be nonnegative");
    }
    if (k > 0 && hazard_[k] < hazard_[k - 1]) {
      throw ConfigError("hazard must be nondecreasing");
    }
  }
}

double IntensityPath::hazard(double t) const { return grid_.interpolate(hazard_, t); }

double IntensityPath::survival(double t) const { return std::exp(-hazard(t)); }

double IntensityPath::rate_at(double t) const {
  const auto [cell, f] = grid_.locate(t);
  if (f == 0.0) return rate_[cell];
  return rate_[cell] + f * (rate_left_[cell + 1] - rate_[cell]);
}

double IntensityPath::first_passage(double threshold) const noexcept {
  if (threshold <= 0.0) return grid_.t0();
  const auto it = std::lower_bound(hazard_.begin(), hazard_.end(), threshold);
  if (it == hazard_.end()) return std::numeric_limits<double>::infinity();
  const auto k = static_cast<std::size_t>(it - hazard_.begin());
  const double lo = hazard_[k - 1];
  const double hi = hazard_[k];
  const double f = (threshold - lo) / (hi - lo);
  return grid_[k - 1] + f * (grid_[k] - grid_[k - 1]);
}

IntensityPath simulate_intensity_path(const IntensityModel& model,
                                      const TimeGrid& grid, std::uint64_t seed) {
  validate(model);
  const std::size_t n = grid.size();
  return std::visit(
      Overloaded{
          [&](const ConstantIntensity& m) {
            std::vector<double> rate(n, m.rate);
            std::vector<double> hazard(n);
            for (std::size_t k = 0; k < n; ++k) hazard[k] = m.rate * (grid[k] - grid.t0());
            return IntensityPath(grid, rate, rate, std::move(hazard));
          },
          [&](const PiecewiseConstantIntensity& m) {
            std::vector<double> rate(n), left(n), hazard(n);
            const double base = m.integral_to(grid.t0());
            for (std::size_t k = 0; k < n; ++k) {
              rate[k] = m.rate_at(grid[k]);
              left[k] = k == 0 ? rate[k] : m.rate_at(std::nextafter(grid[k], -1.0));
              hazard[k] = m.integral_to(grid[k]) - base;
            }
            hazard[0] = 0.0;
            return IntensityPath(grid, std::move(rate), std::move(left), std::move(hazard));
          },
          [&](const LogOrnsteinUhlenbeck& m) {
            const OuStep step = ou_step(m, grid.step());
            RandomStream driver = substream(seed, 0, Purpose::kIntensityDriver);
            std::vector<double> rate(n);
            double x = std::log(m.initial);
            rate[0] = m.initial;
            for (std::size_t k = 1; k < n; ++k) {
              const double z = driver.normal();
              x = x * step.decay + step.shift + step.sd * z;
              rate[k] = std::exp(x);
            }
            return IntensityPath(grid, std::move(rate));
          },
      },
      model);
}

IntensityPath continue_intensity_path(const IntensityModel& model,
                                      const IntensityPath& observed,
                                      std::size_t from_node, std::uint64_t seed) {
  validate(model);
  const auto* ou = std::get_if<LogOrnsteinUhlenbeck>(&model);
  if (ou == nullptr) return observed;
  const TimeGrid& grid = observed.grid();
  if (from_node >= grid.size()) throw OutOfRangeError("continuation node outside grid");
  const OuStep step = ou_step(*ou, grid.step());
  RandomStream driver = substream(seed, 0, Purpose::kIntensityDriver);
  std::vector<double> rate(observed.rate().begin(),
                           observed.rate().begin() + static_cast<std::ptrdiff_t>(from_node) + 1);
  rate.resize(grid.size());
  double x = std::log(rate[from_node]);
  for (std::size_t k = from_node + 1; k < grid.size(); ++k) {
    x = x * step.decay + step.shift + step.sd * driver.normal();
    rate[k] = std::exp(x);
  }
  return IntensityPath(grid, std::move(rate));
}

}  // namespace claimsim
