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

#include <cstdint>
#include <variant>
#include <vector>

#include "claimsim/time_grid.hpp"

namespace claimsim {

/// Occurrence intensity models. Rates are in 1/years.
struct ConstantIntensity {
  double rate;
};

/// rates[i] applies on [breakpoints[i], breakpoints[i+1]); the last rate
/// extends to infinity. breakpoints[0] must be 0.
struct PiecewiseConstantIntensity {
  std::vector<double> breakpoints;
  std::vector<double> rates;

  double rate_at(double t) const noexcept;
  /// Exact integral of the rate over [0, t].
  double integral_to(double t) const noexcept;
};

/// log mu follows d x = mean_reversion (long_run_log_level - x) dt + vol dW,
/// started at log(initial).
struct LogOrnsteinUhlenbeck {
  double mean_reversion;
  double long_run_log_level;
  double vol;
  double initial;
};

using IntensityModel =
    std::variant<ConstantIntensity, PiecewiseConstantIntensity,
                 LogOrnsteinUhlenbeck>;

/// Throws ConfigError naming the offending "intensity.*" field.
void validate(const IntensityModel& model);

/// True when the model ignores its seed (no stochastic driver).
bool is_deterministic(const IntensityModel& model) noexcept;

/// A realized intensity on a grid together with its cumulative hazard.
///
/// `rate` holds right limits mu(t_k+) and `rate_left` left limits mu(t_k-);
/// they differ only where a piecewise-constant rate jumps at a node. Cell k
/// contributes step * (rate[k] + rate_left[k+1]) / 2 to the hazard, which is
/// the trapezoid rule for continuous paths and exact for piecewise-constant
/// ones whose breakpoints sit on nodes.
class IntensityPath {
 public:
  /// Continuous path from node values; hazard by cumulative trapezoid.
  IntensityPath(TimeGrid grid, std::vector<double> rate);
  /// Full constructor; `hazard` must start at 0 and be nondecreasing.
  IntensityPath(TimeGrid grid, std::vector<double> rate,
                std::vector<double> rate_left, std::vector<double> hazard);

  const TimeGrid& grid() const noexcept { return grid_; }
  const std::vector<double>& rate() const noexcept { return rate_; }
  const std::vector<double>& rate_left() const noexcept { return rate_left_; }
  const std::vector<double>& hazard_values() const noexcept { return hazard_; }

  /// Gamma_t, linear interpolation of the cumulative hazard. Gamma_{t0} = 0.
  double hazard(double t) const;
  /// exp(-Gamma_t): the conditional probability that no accident occurred
  /// by t.
  double survival(double t) const;
  /// mu_t, linearly interpolated inside a cell (right limit at nodes).
  double rate_at(double t) const;

  /// Smallest t with Gamma_t >= threshold, inverting the interpolated hazard;
  /// +infinity if the hazard never reaches it on the grid.
  double first_passage(double threshold) const noexcept;

 private:
  TimeGrid grid_;
  std::vector<double> rate_;
  std::vector<double> rate_left_;
  std::vector<double> hazard_;
};

/// Deterministic in (model, grid, seed); constant and piecewise-constant
/// models ignore the seed. The log-OU model uses exact Gaussian transitions
/// of the log-level between nodes, with driver normals drawn from
/// substream(seed, 0, kIntensityDriver).
IntensityPath simulate_intensity_path(const IntensityModel& model,
                                      const TimeGrid& grid, std::uint64_t seed);

/// Keeps `observed` on nodes [0, from_node] and simulates the remainder
/// conditionally on the value at from_node. Deterministic models return the
/// path unchanged.
IntensityPath continue_intensity_path(const IntensityModel& model,
                                      const IntensityPath& observed,
                                      std::size_t from_node, std::uint64_t seed);

}  // namespace claimsim
