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
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "claimsim/intensity.hpp"
#include "claimsim/rng.hpp"

namespace claimsim {

// ---------------------------------------------------------------------------
// Mark laws (claim payment sizes, real monetary units)

struct DeterministicMark {
  double value;
};
struct ExponentialMark {
  double mean;
};
/// exp(N(mu_ln, sigma_ln^2)).
struct LogNormalMark {
  double mu_ln;
  double sigma_ln;
};

using MarkLaw = std::variant<DeterministicMark, ExponentialMark, LogNormalMark>;

double mean(const MarkLaw& law) noexcept;
double sample(const MarkLaw& law, RandomStream& rng) noexcept;
/// `prefix` is the config path used in error messages ("first_mark", ...).
void validate(const MarkLaw& law, const std::string& prefix);

// ---------------------------------------------------------------------------
// Reporting delay: atom alpha0 at zero plus density (1 - alpha0) * f.

struct NoDelayDensity {};
struct ExponentialDelay {
  double rate;
};
/// Shape must be >= 1 so the density is bounded at 0.
struct GammaDelay {
  double shape;
  double rate;
};

using DelayDensity = std::variant<NoDelayDensity, ExponentialDelay, GammaDelay>;

struct DelayLaw {
  double alpha0 = 1.0;
  DelayDensity density = NoDelayDensity{};

  /// G(x) = P(theta <= x); zero for x < 0.
  double cdf(double x) const noexcept;
  /// 1 - G(x), computed without cancellation.
  double tail(double x) const noexcept;
  /// g(x): the absolutely continuous part including its weight 1 - alpha0.
  double density_at(double x) const noexcept;
  double mean() const noexcept;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Compound-Poisson development after first reporting.

struct DevelopmentLaw {
  double lambda = 0.0;
  MarkLaw marks = DeterministicMark{1.0};

  double mark_mean() const noexcept { return claimsim::mean(marks); }
  void validate() const;
};

// ---------------------------------------------------------------------------
// Realized claim histories

struct Development {
  double offset;  ///< time after first reporting, > 0
  double mark;
};

/// One incurred claim. Event j = 0 is the first report at report_time with
/// first_mark; event j >= 1 is developments[j-1] at report_time + offset.
struct Claim {
  double accident_time;
  double delay;
  double report_time;
  double first_mark;
  std::vector<Development> developments;
};

/// One policy. `claim` is empty when no accident happens on the simulated
/// horizon (accident time +infinity).
struct ClaimRecord {
  std::size_t policy = 0;
  std::optional<Claim> claim;
};

struct VisibleEvent {
  double time;
  double mark;
};

/// Everything observable about a reported claim at the as-of time.
struct VisibleHistory {
  std::size_t policy;
  double accident_time;
  double delay;
  double report_time;
  double first_mark;
  std::vector<VisibleEvent> developments;
};

struct PortfolioState {
  double as_of = 0.0;
  std::size_t policies = 0;
  std::size_t reported_count = 0;
  std::vector<VisibleHistory> histories;

  /// A state carrying only counts, for pricing without claim detail.
  static PortfolioState counts(double as_of, std::size_t policies,
                               std::size_t reported);
};

// ---------------------------------------------------------------------------
// Sampling

/// Accident time for a given Exp(1) threshold: inf{t : Gamma_t >= threshold}.
double accident_time_from_threshold(const IntensityPath& path, double threshold) noexcept;
/// Draws the threshold from `seed`; +infinity when no accident on the grid.
double sample_accident_time(const IntensityPath& path, std::uint64_t seed);

double sample_delay(const DelayLaw& law, RandomStream& rng) noexcept;
double sample_delay(const DelayLaw& law, std::uint64_t seed);

/// Poisson arrivals on (0, horizon] with i.i.d. marks, offsets strictly
/// increasing.
std::vector<Development> sample_development(const DevelopmentLaw& law, double horizon,
                                            RandomStream& rng);
std::vector<Development> sample_development(const DevelopmentLaw& law, double horizon,
                                            std::uint64_t seed);

/// Root seeds of the four independent per-policy substream families.
struct PortfolioSeeds {
  std::uint64_t accident;
  std::uint64_t delay;
  std::uint64_t first_mark;
  std::uint64_t development;

  static PortfolioSeeds from(std::uint64_t seed) noexcept;
};

struct PortfolioSpec {
  std::size_t policies;
  DelayLaw delay;
  MarkLaw first_mark;
  DevelopmentLaw development;
  double horizon;
};

/// All policies share the same intensity path. Policy i draws from
/// substream(seeds.<purpose>, i, purpose). Developments are simulated on
/// (0, horizon - report_time] and are empty when report_time > horizon.
std::vector<ClaimRecord> simulate_portfolio(const PortfolioSpec& spec,
                                            const IntensityPath& intensity,
                                            const PortfolioSeeds& seeds);
std::vector<ClaimRecord> simulate_portfolio(const PortfolioSpec& spec,
                                            const IntensityPath& intensity,
                                            std::uint64_t seed);

/// Restricts claims to what has been reported by t.
PortfolioState observed_state(const std::vector<ClaimRecord>& claims, double t);

/// R_t only, without building histories.
std::size_t reported_count(const std::vector<ClaimRecord>& claims, double t) noexcept;

}  // namespace claimsim
