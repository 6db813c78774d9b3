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

#include "claimsim/portfolio.hpp"

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "claimsim/error.hpp"

namespace claimsim {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require(bool ok, const std::string& message, const std::string& field) {
  if (!ok) throw ConfigError(message, field);
}

}  // namespace

double mean(const MarkLaw& law) noexcept {
  return std::visit(Overloaded{
                        [](const DeterministicMark& m) { return m.value; },
                        [](const ExponentialMark& m) { return m.mean; },
                        [](const LogNormalMark& m) {
                          return std::exp(m.mu_ln + 0.5 * m.sigma_ln * m.sigma_ln);
                        },
                    },
                    law);
}

double sample(const MarkLaw& law, RandomStream& rng) noexcept {
  return std::visit(Overloaded{
                        [](const DeterministicMark& m) { return m.value; },
                        [&](const ExponentialMark& m) { return m.mean * rng.exponential(); },
                        [&](const LogNormalMark& m) {
                          return std::exp(m.mu_ln + m.sigma_ln * rng.normal());
                        },
                    },
                    law);
}

void validate(const MarkLaw& law, const std::string& prefix) {
  std::visit(Overloaded{
                 [&](const DeterministicMark& m) {
                   require(std::isfinite(m.value) && m.value > 0.0, "must be finite and > 0",
                           prefix + ".value");
                 },
                 [&](const ExponentialMark& m) {
                   require(std::isfinite(m.mean) && m.mean > 0.0, "must be finite and > 0",
                           prefix + ".mean");
                 },
                 [&](const LogNormalMark& m) {
                   require(std::isfinite(m.mu_ln), "must be finite", prefix + ".mu_ln");
                   require(std::isfinite(m.sigma_ln) && m.sigma_ln >= 0.0,
                           "must be finite and >= 0", prefix + ".sigma_ln");
                 },
             },
             law);
}

// ---------------------------------------------------------------------------

double DelayLaw::tail(double x) const noexcept {
  if (x < 0.0) return 1.0;
  const double weight = 1.0 - alpha0;
  return std::visit(
      Overloaded{
          [](const NoDelayDensity&) { return 0.0; },
          [&](const ExponentialDelay& d) { return weight * std::exp(-d.rate * x); },
          [&](const GammaDelay& d) {
            return weight * boost::math::gamma_q(d.shape, d.rate * x);
          },
      },
      density);
}

double DelayLaw::cdf(double x) const noexcept {
  if (x < 0.0) return 0.0;
  return 1.0 - tail(x);
}

double DelayLaw::density_at(double x) const noexcept {
  if (x < 0.0) return 0.0;
  const double weight = 1.0 - alpha0;
  return std::visit(
      Overloaded{
          [](const NoDelayDensity&) { return 0.0; },
          [&](const ExponentialDelay& d) { return weight * d.rate * std::exp(-d.rate * x); },
          [&](const GammaDelay& d) {
            return weight * d.rate * boost::math::gamma_p_derivative(d.shape, d.rate * x);
          },
      },
      density);
}

double DelayLaw::mean() const noexcept {
  const double weight = 1.0 - alpha0;
  return std::visit(Overloaded{
                        [](const NoDelayDensity&) { return 0.0; },
                        [&](const ExponentialDelay& d) { return weight / d.rate; },
                        [&](const GammaDelay& d) { return weight * d.shape / d.rate; },
                    },
                    density);
}

void DelayLaw::validate() const {
  require(std::isfinite(alpha0) && alpha0 >= 0.0 && alpha0 <= 1.0, "must be in [0, 1]",
          "delay.alpha0");
  std::visit(Overloaded{
                 [&](const NoDelayDensity&) {
                   require(alpha0 == 1.0, "a delay law without density needs alpha0 = 1",
                           "delay.density");
                 },
                 [&](const ExponentialDelay& d) {
                   require(alpha0 < 1.0, "alpha0 = 1 requires density kind \"none\"",
                           "delay.density");
                   require(std::isfinite(d.rate) && d.rate > 0.0, "must be finite and > 0",
                           "delay.density.rate");
                 },
                 [&](const GammaDelay& d) {
                   require(alpha0 < 1.0, "alpha0 = 1 requires density kind \"none\"",
                           "delay.density");
                   require(std::isfinite(d.shape) && d.shape >= 1.0, "must be finite and >= 1",
                           "delay.density.shape");
                   require(std::isfinite(d.rate) && d.rate > 0.0, "must be finite and > 0",
                           "delay.density.rate");
                 },
             },
             density);
}

void DevelopmentLaw::validate() const {
  require(std::isfinite(lambda) && lambda >= 0.0, "must be finite and >= 0",
          "development.lambda");
  claimsim::validate(marks, "development.mark");
}

PortfolioState PortfolioState::counts(double as_of, std::size_t policies,
                                      std::size_t reported) {
  if (reported > policies) {
    throw ConfigError("reported count exceeds portfolio size", "valuation.reported_count");
  }
  PortfolioState s;
  s.as_of = as_of;
  s.policies = policies;
  s.reported_count = reported;
  return s;
}

// ---------------------------------------------------------------------------

double accident_time_from_threshold(const IntensityPath& path, double threshold) noexcept {
  return path.first_passage(threshold);
}

double sample_accident_time(const IntensityPath& path, std::uint64_t seed) {
  RandomStream rng(seed);
  return accident_time_from_threshold(path, rng.exponential());
}

double sample_delay(const DelayLaw& law, RandomStream& rng) noexcept {
  if (law.alpha0 >= 1.0) return 0.0;
  if (law.alpha0 > 0.0 && rng.uniform() < law.alpha0) return 0.0;
  return std::visit(Overloaded{
                        [](const NoDelayDensity&) { return 0.0; },
                        [&](const ExponentialDelay& d) { return rng.exponential() / d.rate; },
                        [&](const GammaDelay& d) { return rng.gamma(d.shape) / d.rate; },
                    },
                    law.density);
}

double sample_delay(const DelayLaw& law, std::uint64_t seed) {
  law.validate();
  RandomStream rng(seed);
  return sample_delay(law, rng);
}

std::vector<Development> sample_development(const DevelopmentLaw& law, double horizon,
                                            RandomStream& rng) {
  std::vector<Development> out;
  if (law.lambda <= 0.0 || horizon <= 0.0) return out;
  double t = 0.0;
  for (;;) {
    t += rng.exponential() / law.lambda;
    if (t > horizon) break;
    out.push_back({t, sample(law.marks, rng)});
  }
  return out;
}

std::vector<Development> sample_development(const DevelopmentLaw& law, double horizon,
                                            std::uint64_t seed) {
  if (horizon < 0.0) throw ConfigError("development horizon must be >= 0");
  law.validate();
  RandomStream rng(seed);
  return sample_development(law, horizon, rng);
}

PortfolioSeeds PortfolioSeeds::from(std::uint64_t seed) noexcept {
  return {derive_seed(seed, 0, Purpose::kAccidentTime), derive_seed(seed, 0, Purpose::kDelay),
          derive_seed(seed, 0, Purpose::kFirstMark),
          derive_seed(seed, 0, Purpose::kDevelopment)};
}

std::vector<ClaimRecord> simulate_portfolio(const PortfolioSpec& spec,
                                            const IntensityPath& intensity,
                                            const PortfolioSeeds& seeds) {
  std::vector<ClaimRecord> out(spec.policies);
  for (std::size_t i = 0; i < spec.policies; ++i) {
    out[i].policy = i;
    RandomStream accident = substream(seeds.accident, i, Purpose::kAccidentTime);
    const double tau0 = accident_time_from_threshold(intensity, accident.exponential());
    if (!std::isfinite(tau0)) continue;

    RandomStream delay_rng = substream(seeds.delay, i, Purpose::kDelay);
    RandomStream mark_rng = substream(seeds.first_mark, i, Purpose::kFirstMark);
    Claim claim;
    claim.accident_time = tau0;
    claim.delay = sample_delay(spec.delay, delay_rng);
    claim.report_time = tau0 + claim.delay;
    claim.first_mark = sample(spec.first_mark, mark_rng);
    if (claim.report_time <= spec.horizon) {
      RandomStream dev_rng = substream(seeds.development, i, Purpose::kDevelopment);
      claim.developments =
          sample_development(spec.development, spec.horizon - claim.report_time, dev_rng);
    }
    out[i].claim = std::move(claim);
  }
  return out;
}

std::vector<ClaimRecord> simulate_portfolio(const PortfolioSpec& spec,
                                            const IntensityPath& intensity,
                                            std::uint64_t seed) {
  if (spec.policies == 0) throw ConfigError("must be >= 1", "portfolio.n");
  spec.delay.validate();
  validate(spec.first_mark, "first_mark");
  spec.development.validate();
  return simulate_portfolio(spec, intensity, PortfolioSeeds::from(seed));
}

std::size_t reported_count(const std::vector<ClaimRecord>& claims, double t) noexcept {
  std::size_t count = 0;
  for (const auto& record : claims) {
    if (record.claim && record.claim->report_time <= t) ++count;
  }
  return count;
}

PortfolioState observed_state(const std::vector<ClaimRecord>& claims, double t) {
  PortfolioState state;
  state.as_of = t;
  state.policies = claims.size();
  for (const auto& record : claims) {
    if (!record.claim || record.claim->report_time > t) continue;
    const Claim& c = *record.claim;
    VisibleHistory h{record.policy, c.accident_time, c.delay, c.report_time, c.first_mark, {}};
    for (const auto& d : c.developments) {
      const double when = c.report_time + d.offset;
      if (when > t) break;
      h.developments.push_back({when, d.mark});
    }
    state.histories.push_back(std::move(h));
  }
  state.reported_count = state.histories.size();
  return state;
}

}  // namespace claimsim
