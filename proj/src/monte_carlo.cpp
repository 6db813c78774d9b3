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

#include "claimsim/monte_carlo.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "claimsim/error.hpp"
#include "claimsim/numeric.hpp"
#include "claimsim/rng.hpp"

namespace claimsim {
namespace {

McEstimate from_moments(const SampleMoments& m) {
  return {m.mean, m.std_error, m.count, m.mean - 1.96 * m.std_error, m.mean + 1.96 * m.std_error};
}

void validate_config(const McConfig& c) {
  if (c.paths < kMinPaths) throw ConfigError("must be >= 100", "mc.paths");
  if (!(c.t <= c.horizon)) throw ConfigError("must not exceed valuation.T", "valuation.t");
  if (!c.grid.contains(c.t) || !c.grid.contains(c.horizon)) {
    throw ConfigError("valuation window must lie inside the grid", "valuation.T");
  }
  validate(c.intensity);
  validate(c.market);
  c.delay.validate();
  validate(c.first_mark, "first_mark");
  c.development.validate();
}

// Everything one simulated scenario needs, with deterministic components
// simulated once and shared.
class ScenarioSampler {
 public:
  explicit ScenarioSampler(const McConfig& c)
      : config_(c),
        spec_{c.policies, c.delay, c.first_mark, c.development, c.horizon} {
    if (is_deterministic(c.intensity)) shared_intensity_ = simulate_intensity_path(c.intensity, c.grid, 0);
    if (is_deterministic(c.market)) shared_market_ = simulate_market(c.market, c.grid, 0);
  }

  struct Outcome {
    double payoff;
    std::size_t reported;
  };

  Outcome run(std::uint64_t path_seed, bool antithetic) const {
    std::optional<IntensityPath> own_intensity;
    if (!shared_intensity_) {
      own_intensity = simulate_intensity_path(config_.intensity, config_.grid, path_seed);
    }
    const IntensityPath& intensity = shared_intensity_ ? *shared_intensity_ : *own_intensity;
    std::optional<MarketPath> own_market;
    if (!shared_market_) {
      own_market = simulate_market(config_.market, config_.grid, path_seed, antithetic);
    }
    const MarketPath& market = shared_market_ ? *shared_market_ : *own_market;
    const auto claims = simulate_portfolio(spec_, intensity, PortfolioSeeds::from(path_seed));
    const double paid = benchmarked_cashflow(claims, market, config_.t, config_.horizon);
    return {paid / market.deflator(config_.t), reported_count(claims, config_.t)};
  }

 private:
  const McConfig& config_;
  PortfolioSpec spec_;
  std::optional<IntensityPath> shared_intensity_;
  std::optional<MarketPath> shared_market_;
};

}  // namespace

McEstimate estimate_mean(std::size_t count, unsigned threads,
                         const std::function<double(std::size_t)>& sample) {
  std::vector<double> values(count);
  parallel_for(count, threads, [&](std::size_t i) { values[i] = sample(i); });
  return from_moments(sample_moments(values));
}

McEstimate mc_reserve(const McConfig& config) {
  validate_config(config);
  if (!std::holds_alternative<Unconditional>(config.conditioning)) {
    return mc_conditional_reserve(config);
  }
  if (config.t != config.grid.t0()) {
    throw ConfigError("unconditional estimates require t = grid start", "valuation.t");
  }
  if (config.policies == 0) return {0.0, 0.0, config.paths, 0.0, 0.0};
  const ScenarioSampler sampler(config);
  const bool antithetic = config.antithetic && !is_deterministic(config.market);
  if (!antithetic) {
    return estimate_mean(config.paths, config.threads, [&](std::size_t p) {
      return sampler.run(derive_seed(config.seed, p, Purpose::kMonteCarloPath), false).payoff;
    });
  }
  return estimate_mean(config.paths / 2, config.threads, [&](std::size_t p) {
    const auto seed = derive_seed(config.seed, p, Purpose::kMonteCarloPath);
    return 0.5 * (sampler.run(seed, false).payoff + sampler.run(seed, true).payoff);
  });
}

McEstimate mc_conditional_reserve(const McConfig& config) {
  validate_config(config);
  const auto* target = std::get_if<ConditionOnReportedCount>(&config.conditioning);
  if (target == nullptr) throw ConfigError("conditional estimate needs a reported-count target");
  if (target->reported > config.policies) {
    throw ConfigError("target reported count exceeds portfolio size", "valuation.reported_count");
  }
  if (!is_deterministic(config.intensity) || !is_deterministic(config.market)) {
    throw UnsupportedRegimeError(
        "conditional Monte Carlo requires deterministic intensity and deflator");
  }
  const ScenarioSampler sampler(config);
  std::vector<double> payoff(config.paths);
  std::vector<std::size_t> reported(config.paths);
  parallel_for(config.paths, config.threads, [&](std::size_t p) {
    const auto outcome = sampler.run(derive_seed(config.seed, p, Purpose::kMonteCarloPath), false);
    payoff[p] = outcome.payoff;
    reported[p] = outcome.reported;
  });
  std::vector<double> bucket;
  for (std::size_t p = 0; p < config.paths; ++p) {
    if (reported[p] == target->reported) bucket.push_back(payoff[p]);
  }
  if (bucket.size() < kMinPaths) {
    std::ostringstream msg;
    msg << "only " << bucket.size() << " of " << config.paths << " paths have R_t = "
        << target->reported << " (need " << kMinPaths << ")";
    throw InsufficientDataError(msg.str());
  }
  return from_moments(sample_moments(bucket));
}

Comparison compare(const ReserveResult& analytic, const McEstimate& mc) {
  Comparison c;
  c.difference = analytic.total - mc.mean;
  c.std_error = std::hypot(mc.std_error, analytic.outer_std_error);
  if (c.std_error > 0.0) {
    c.z = c.difference / c.std_error;
    c.pass = std::abs(c.z) <= 3.0;
    return c;
  }
  const double tolerance = 1e-12 * std::max(1.0, std::abs(analytic.total));
  c.pass = std::abs(c.difference) <= tolerance;
  c.hard_fail = !c.pass;
  c.z = c.pass ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), c.difference);
  return c;
}

}  // namespace claimsim
