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

#include "claimsim/market.hpp"

#include <cmath>

#include "claimsim/error.hpp"
#include "claimsim/numeric.hpp"
#include "claimsim/rng.hpp"

namespace claimsim {

void validate(const MarketModel& model) {
  if (const auto* d = std::get_if<DeterministicDeflator>(&model)) {
    if (!std::isfinite(d->initial) || d->initial <= 0.0) {
      throw ConfigError("must be finite and > 0", "market.initial");
    }
    if (!std::isfinite(d->rate)) throw ConfigError("must be finite", "market.rate");
    return;
  }
  const auto& m = std::get<MartingaleDeflator>(model);
  if (!std::isfinite(m.initial) || m.initial <= 0.0) {
    throw ConfigError("must be finite and > 0", "market.initial");
  }
  if (!std::isfinite(m.vol) || m.vol < 0.0) {
    throw ConfigError("must be finite and >= 0", "market.vol");
  }
  if (!(m.correlation >= -1.0 && m.correlation <= 1.0)) {
    throw ConfigError("must be in [-1, 1]", "market.correlation");
  }
}

bool is_deterministic(const MarketModel& model) noexcept {
  if (const auto* m = std::get_if<MartingaleDeflator>(&model)) return m->vol == 0.0;
  return true;
}

MarketPath::MarketPath(TimeGrid grid, std::vector<double> deflator)
    : grid_(std::move(grid)), values_(std::move(deflator)) {
  if (values_.size() != grid_.size()) {
    throw ConfigError("market path length does not match grid");
  }
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("deflator values must be > 0");
  }
}

double MarketPath::deflator(double t) const { return grid_.interpolate(values_, t); }

MarketPath simulate_market(const MarketModel& model, const TimeGrid& grid,
                           std::uint64_t seed, bool antithetic) {
  validate(model);
  std::vector<double> values(grid.size());
  if (const auto* d = std::get_if<DeterministicDeflator>(&model)) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      values[k] = d->initial * std::exp(-d->rate * grid[k]);
    }
    return MarketPath(grid, std::move(values));
  }
  const auto& m = std::get<MartingaleDeflator>(model);
  values[0] = m.initial;
  if (m.vol == 0.0) {
    for (auto& v : values) v = m.initial;
    return MarketPath(grid, std::move(values));
  }
  const double h = grid.step();
  const double scale = m.vol * std::sqrt(h);
  const double drift = -0.5 * m.vol * m.vol * h;
  const double own_weight = std::sqrt(1.0 - m.correlation * m.correlation);
  RandomStream own = substream(seed, 0, Purpose::kMarketDriver);
  RandomStream shared = substream(seed, 0, Purpose::kIntensityDriver);
  double log_level = std::log(m.initial);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    double z = own.normal();
    if (m.correlation != 0.0) z = m.correlation * shared.normal() + own_weight * z;
    if (antithetic) z = -z;
    log_level += drift + scale * z;
    values[k] = std::exp(log_level);
  }
  return MarketPath(grid, std::move(values));
}

double benchmarked_cashflow(const std::vector<ClaimRecord>& claims, const MarketPath& path,
                            double t, double T) {
  CompensatedSum total;
  for (const auto& record : claims) {
    if (!record.claim) continue;
    const Claim& c = *record.claim;
    if (c.report_time > T) continue;
    if (c.report_time > t) total.add(path.deflator(c.report_time) * c.first_mark);
    for (const auto& d : c.developments) {
      const double when = c.report_time + d.offset;
      if (when > T) break;
      if (when > t) total.add(path.deflator(when) * d.mark);
    }
  }
  return total.value();
}

}  // namespace claimsim
