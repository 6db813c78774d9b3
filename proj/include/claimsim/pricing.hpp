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
#include <vector>

#include "claimsim/intensity.hpp"
#include "claimsim/market.hpp"
#include "claimsim/portfolio.hpp"

namespace claimsim {

/// Cell rule for every time integral in this module. kLeftEndpoint is a
/// deliberately first-order rule used as a negative control in self tests.
enum class QuadratureRule { kTrapezoid, kLeftEndpoint };

struct QuadratureOptions {
  QuadratureRule rule = QuadratureRule::kTrapezoid;
};

/// Expected cumulative development of one reported claim t years after its
/// first report: lambda * m * max(t, 0).
double tilde_m(const DevelopmentLaw& dev, double t) noexcept;

/// P(tau1 <= t | F_t) = int_0^t G(t - s) e^{-Gamma_s} mu_s ds.
///
/// Evaluated through the complement 1 - e^{-Gamma_t} - int_0^t Gbar(t - u)
/// e^{-Gamma_u} mu_u du so that a pure atom at zero (Gbar = 0) reproduces
/// 1 - e^{-Gamma_t} exactly. Clamped to [0, 1 - e^{-Gamma_t}].
double reporting_cdf(const IntensityPath& path, const DelayLaw& delay, double t,
                     const QuadratureOptions& opts = {});

/// d/dt P(tau1 <= t | F_t) = alpha0 e^{-Gamma_t} mu_t
///                           + int_0^t g(t - u) e^{-Gamma_u} mu_u du.
double reporting_density(const IntensityPath& path, const DelayLaw& delay, double t,
                         const QuadratureOptions& opts = {});

/// Incurred but not reported by t: (1 - e^{-Gamma_t}) - reporting_cdf(t).
double ibnr_probability(const IntensityPath& path, const DelayLaw& delay, double t,
                        const QuadratureOptions& opts = {});

/// Reporting CDF and density at every node of the path's grid.
struct ReportingCurve {
  TimeGrid grid;
  std::vector<double> cdf;
  std::vector<double> density;
};

/// O(nodes) for exponential delays (the convolution kernel factorizes
/// across cells), O(nodes^2) otherwise.
ReportingCurve reporting_curve(const IntensityPath& path, const DelayLaw& delay,
                               const QuadratureOptions& opts = {});

struct ReserveInputs {
  /// Law of mu. Deterministic models use `intensity` as is; stochastic ones
  /// use it as the observed history up to the valuation time and average
  /// over simulated continuations.
  IntensityModel intensity_model;
  IntensityPath intensity;
  MarketModel market_model;
  MarketPath market;
  DelayLaw delay;
  MarkLaw first_mark;
  DevelopmentLaw development;

  std::size_t outer_paths = 2000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  QuadratureOptions quadrature;
};

struct ReserveResult {
  double as_of = 0.0;
  double horizon = 0.0;
  double reported = 0.0;
  double unreported = 0.0;
  double total = 0.0;

  double quadrature_step = 0.0;
  /// |V(h) - V(2h)| / 3 for deterministic intensity; NaN when unavailable.
  double quadrature_error_estimate = 0.0;
  /// Standard error of the stochastic-intensity average (0 otherwise).
  double outer_std_error = 0.0;
  std::size_t outer_paths = 0;
};

/// Real-world value in real units of the payments in (t, T], t = state.as_of:
///
///   reported   = lambda m R_t int_t^T E[D_u | F_t] / D_t du
///   unreported = (n - R_t) E[ int_t^T (E[X1] E_u + lambda m int_u^T E_v dv)
///                               dP(tau1 <= u | F_u) | F_t ] / P(tau1 > t | F_t)
///
/// where D is the deflator and E_u = E[D_u | F_t] / D_t, which is 1 for a
/// martingale deflator.
///
/// Throws UnsupportedRegimeError for stochastic intensity correlated with
/// the deflator, DegenerateStateError when P(tau1 > t | F_t) < 1e-12 with
/// unreported policies left.
ReserveResult reserve(const PortfolioState& state, const ReserveInputs& inputs, double horizon);

}  // namespace claimsim
