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

#include "claimsim/portfolio.hpp"
#include "claimsim/time_grid.hpp"

namespace claimsim {

/// Deflator I/S* (inflation index over benchmark portfolio).

/// I_t/S*_t = initial * exp(-rate * t).
struct DeterministicDeflator {
  double initial = 1.0;
  double rate = 0.0;
};

/// Driftless geometric Brownian motion. `correlation` couples its driver
/// normals with the log-OU intensity driver; nonzero correlation takes the
/// scenario outside the closed-form pricing regime.
struct MartingaleDeflator {
  double initial = 1.0;
  double vol = 0.0;
  double correlation = 0.0;
};

using MarketModel = std::variant<DeterministicDeflator, MartingaleDeflator>;

void validate(const MarketModel& model);
bool is_deterministic(const MarketModel& model) noexcept;

class MarketPath {
 public:
  MarketPath(TimeGrid grid, std::vector<double> deflator);

  const TimeGrid& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// Linear interpolation; throws OutOfRangeError off-grid.
  double deflator(double t) const;

 private:
  TimeGrid grid_;
  std::vector<double> values_;
};

/// Deterministic in (model, grid, seed). The martingale model uses exact
/// log-normal increments exp(vol sqrt(h) z - vol^2 h / 2) with z drawn from
/// substream(seed, 0, kMarketDriver); when correlated, z is mixed with the
/// normals of substream(seed, 0, kIntensityDriver). `antithetic` negates z.
MarketPath simulate_market(const MarketModel& model, const TimeGrid& grid,
                           std::uint64_t seed, bool antithetic = false);

/// Sum over events in (t, T] of deflator(event time) * mark.
double benchmarked_cashflow(const std::vector<ClaimRecord>& claims, const MarketPath& path,
                            double t, double T);

}  // namespace claimsim
