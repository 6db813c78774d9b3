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

#include "claimsim/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "claimsim/error.hpp"
#include "claimsim/numeric.hpp"
#include "claimsim/rng.hpp"

namespace claimsim {
namespace {

constexpr double kMinSurvival = 1e-12;

// e^{-Gamma} mu at nodes, right and left limits.
struct Incidence {
  std::vector<double> survival;
  std::vector<double> right;
  std::vector<double> left;

  explicit Incidence(const IntensityPath& path) {
    const std::size_t n = path.grid().size();
    survival.resize(n);
    right.resize(n);
    left.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      survival[k] = std::exp(-path.hazard_values()[k]);
      right[k] = survival[k] * path.rate()[k];
      left[k] = survival[k] * path.rate_left()[k];
    }
  }
};

// A convolution kernel x -> kernel(x), x >= 0. When decay_rate is set the
// kernel is c * exp(-decay_rate * x) and nodal convolutions use a recursion.
struct Kernel {
  enum class Kind { kTail, kDensity } kind;
  const DelayLaw* delay;
  std::optional<double> decay_rate;

  double operator()(double x) const noexcept {
    x = std::max(x, 0.0);
    return kind == Kind::kTail ? delay->tail(x) : delay->density_at(x);
  }
};

Kernel make_kernel(const DelayLaw& delay, Kernel::Kind kind) {
  Kernel k{kind, &delay, std::nullopt};
  if (const auto* e = std::get_if<ExponentialDelay>(&delay.density)) {
    k.decay_rate = e->rate;
  } else if (std::holds_alternative<NoDelayDensity>(delay.density)) {
    k.decay_rate = 0.0;
  }
  return k;
}

// int_{t0}^t kernel(t - u) e^{-Gamma_u} mu_u du on the grid cells.
double convolve_at(const IntensityPath& path, const Incidence& inc, const Kernel& kernel,
                   double t, QuadratureRule rule) {
  const TimeGrid& grid = path.grid();
  const auto loc = grid.locate(t);
  const bool trapezoid = rule == QuadratureRule::kTrapezoid;
  double total = 0.0;
  for (std::size_t j = 0; j < loc.cell; ++j) {
    const double h = grid[j + 1] - grid[j];
    const double a = kernel(t - grid[j]) * inc.right[j];
    total += trapezoid ? 0.5 * h * (a + kernel(t - grid[j + 1]) * inc.left[j + 1]) : h * a;
  }
  if (loc.fraction > 0.0) {
    const std::size_t c = loc.cell;
    const double len = t - grid[c];
    const double a = kernel(len) * inc.right[c];
    if (trapezoid) {
      const double end = kernel(0.0) * path.survival(t) * path.rate_at(t);
      total += 0.5 * len * (a + end);
    } else {
      total += len * a;
    }
  }
  return total;
}

std::vector<double> convolve_nodes(const IntensityPath& path, const Incidence& inc,
                                   const Kernel& kernel, QuadratureRule rule) {
  const TimeGrid& grid = path.grid();
  const std::size_t n = grid.size();
  const bool trapezoid = rule == QuadratureRule::kTrapezoid;
  std::vector<double> out(n, 0.0);
  if (kernel.decay_rate) {
    const double h = grid.step();
    const double decay = std::exp(-*kernel.decay_rate * h);
    const double k_h = kernel(h);
    const double k_0 = kernel(0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const double cell = trapezoid ? 0.5 * h * (k_h * inc.right[k] + k_0 * inc.left[k + 1])
                                    : h * k_h * inc.right[k];
      out[k + 1] = decay * out[k] + cell;
    }
    return out;
  }
  for (std::size_t k = 1; k < n; ++k) {
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double h = grid[j + 1] - grid[j];
      const double a = kernel(grid[k] - grid[j]) * inc.right[j];
      total += trapezoid ? 0.5 * h * (a + kernel(grid[k] - grid[j + 1]) * inc.left[j + 1])
                         : h * a;
    }
    out[k] = total;
  }
  return out;
}

std::vector<double> density_nodes(const IntensityPath& path, const DelayLaw& delay,
                                  const Incidence& inc, QuadratureRule rule) {
  auto out = convolve_nodes(path, inc, make_kernel(delay, Kernel::Kind::kDensity), rule);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += delay.alpha0 * inc.right[k];
  return out;
}

double clamp_cdf(double value, double incurred) {
  return std::clamp(value, 0.0, std::max(incurred, 0.0));
}

// Pieces of the reserve for one fully specified intensity path.
struct PathValue {
  double reported_per_claim;    // lambda m int_t^T E_u du
  double unreported_bracket;    // int_t^T (...) dP(tau1 <= u | F_u)
};

PathValue path_value(const IntensityPath& path, const DelayLaw& delay,
                     std::span<const double> expectation, double ex1, double lm, double t,
                     double horizon, QuadratureRule rule) {
  const TimeGrid& grid = path.grid();
  const Incidence inc(path);
  const auto density = density_nodes(path, delay, inc, rule);

  // K_k = int_{u_k}^T E_v dv from the cumulative trapezoid of E.
  std::vector<double> cumulative(grid.size(), 0.0);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    cumulative[k + 1] = cumulative[k] + 0.5 * (expectation[k] + expectation[k + 1]) * grid.step();
  }
  const double to_horizon = grid.interpolate(cumulative, horizon);
  std::vector<double> integrand(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    integrand[k] = (ex1 * expectation[k] + lm * (to_horizon - cumulative[k])) * density[k];
  }
  return {lm * grid.integrate(expectation, t, horizon), grid.integrate(integrand, t, horizon)};
}

// Every other node of a path, or nullopt when the cell count is odd.
std::optional<IntensityPath> coarsen(const IntensityPath& path) {
  const TimeGrid& grid = path.grid();
  if (grid.cells() % 2 != 0 || grid.cells() < 4) return std::nullopt;
  TimeGrid coarse(grid.t0(), grid.t_end(), 2.0 * grid.step());
  std::vector<double> rate, left, hazard;
  for (std::size_t k = 0; k < grid.size(); k += 2) {
    rate.push_back(path.rate()[k]);
    left.push_back(path.rate_left()[k]);
    hazard.push_back(path.hazard_values()[k]);
  }
  return IntensityPath(std::move(coarse), std::move(rate), std::move(left), std::move(hazard));
}

std::vector<double> every_other(std::span<const double> v) {
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); k += 2) out.push_back(v[k]);
  return out;
}

}  // namespace

double tilde_m(const DevelopmentLaw& dev, double t) noexcept {
  return t <= 0.0 ? 0.0 : dev.lambda * dev.mark_mean() * t;
}

double reporting_cdf(const IntensityPath& path, const DelayLaw& delay, double t,
                     const QuadratureOptions& opts) {
  const Incidence inc(path);
  const double incurred = -std::expm1(-path.hazard(t));
  const double unreported_incurred =
      convolve_at(path, inc, make_kernel(delay, Kernel::Kind::kTail), t, opts.rule);
  return clamp_cdf(incurred - unreported_incurred, incurred);
}

double reporting_density(const IntensityPath& path, const DelayLaw& delay, double t,
                         const QuadratureOptions& opts) {
  const Incidence inc(path);
  const double atom = delay.alpha0 * path.survival(t) * path.rate_at(t);
  return atom + convolve_at(path, inc, make_kernel(delay, Kernel::Kind::kDensity), t, opts.rule);
}

double ibnr_probability(const IntensityPath& path, const DelayLaw& delay, double t,
                        const QuadratureOptions& opts) {
  const double incurred = -std::expm1(-path.hazard(t));
  return std::max(0.0, incurred - reporting_cdf(path, delay, t, opts));
}

ReportingCurve reporting_curve(const IntensityPath& path, const DelayLaw& delay,
                               const QuadratureOptions& opts) {
  const Incidence inc(path);
  const auto tails = convolve_nodes(path, inc, make_kernel(delay, Kernel::Kind::kTail), opts.rule);
  ReportingCurve curve{path.grid(), std::vector<double>(path.grid().size()),
                       density_nodes(path, delay, inc, opts.rule)};
  for (std::size_t k = 0; k < curve.cdf.size(); ++k) {
    const double incurred = -std::expm1(-path.hazard_values()[k]);
    curve.cdf[k] = clamp_cdf(incurred - tails[k], incurred);
  }
  return curve;
}

ReserveResult reserve(const PortfolioState& state, const ReserveInputs& in, double horizon) {
  const double t = state.as_of;
  const TimeGrid& grid = in.intensity.grid();
  if (!(t <= horizon)) throw ConfigError("valuation time must not exceed horizon", "valuation.t");
  if (!grid.contains(t) || !grid.contains(horizon)) {
    throw OutOfRangeError("valuation window outside the intensity grid");
  }
  if (!(in.market.grid() == grid)) throw ConfigError("market and intensity grids differ");
  if (state.reported_count > state.policies) {
    throw ConfigError("reported count exceeds portfolio size", "valuation.reported_count");
  }
  validate(in.intensity_model);
  validate(in.market_model);
  in.delay.validate();
  validate(in.first_mark, "first_mark");
  in.development.validate();

  const bool stochastic = !is_deterministic(in.intensity_model);
  if (stochastic) {
    if (const auto* m = std::get_if<MartingaleDeflator>(&in.market_model);
        m != nullptr && m->correlation != 0.0 && m->vol != 0.0) {
      throw UnsupportedRegimeError(
          "stochastic intensity correlated with the deflator has no closed quadrature "
          "form; use the Monte Carlo oracle (--mc-only)");
    }
  }

  // E[D_u | F_t] / D_t on nodes.
  std::vector<double> expectation(grid.size(), 1.0);
  if (std::holds_alternative<DeterministicDeflator>(in.market_model)) {
    const double now = in.market.deflator(t);
    for (std::size_t k = 0; k < grid.size(); ++k) expectation[k] = in.market.values()[k] / now;
  }

  const double ex1 = mean(in.first_mark);
  const double lm = in.development.lambda * in.development.mark_mean();
  const auto n = static_cast<double>(state.policies);
  const auto reported = static_cast<double>(state.reported_count);
  const double unreported_count = n - reported;
  const QuadratureRule rule = in.quadrature.rule;

  ReserveResult out;
  out.as_of = t;
  out.horizon = horizon;
  out.quadrature_step = grid.step();

  const double not_reported = 1.0 - reporting_cdf(in.intensity, in.delay, t, in.quadrature);
  if (unreported_count > 0.0 && not_reported < kMinSurvival) {
    std::ostringstream msg;
    msg << "P(tau1 > t | F_t) = " << not_reported << " at t = " << t << " but " << unreported_count
        << " policies are unreported";
    throw DegenerateStateError(msg.str());
  }
  auto combine = [&](double reported_per_claim, double bracket) {
    const double unrep = unreported_count > 0.0 ? unreported_count * bracket / not_reported : 0.0;
    return std::pair{reported * reported_per_claim, unrep};
  };

  if (!stochastic) {
    const auto value =
        path_value(in.intensity, in.delay, expectation, ex1, lm, t, horizon, rule);
    std::tie(out.reported, out.unreported) =
        combine(value.reported_per_claim, value.unreported_bracket);
    out.total = out.reported + out.unreported;

    out.quadrature_error_estimate = std::numeric_limits<double>::quiet_NaN();
    if (auto coarse = coarsen(in.intensity)) {
      const auto coarse_expectation = every_other(expectation);
      const double coarse_not_reported = 1.0 - reporting_cdf(*coarse, in.delay, t, in.quadrature);
      const auto cv =
          path_value(*coarse, in.delay, coarse_expectation, ex1, lm, t, horizon, rule);
      double coarse_total = reported * cv.reported_per_claim;
      if (unreported_count > 0.0 && coarse_not_reported >= kMinSurvival) {
        coarse_total += unreported_count * cv.unreported_bracket / coarse_not_reported;
      }
      out.quadrature_error_estimate = std::abs(out.total - coarse_total) / 3.0;
    }
    return out;
  }

  const auto node = grid.node_index(t);
  if (!node) {
    throw ConfigError("must lie on a grid node for stochastic intensity", "valuation.t");
  }
  if (in.outer_paths < 2) throw ConfigError("must be >= 2", "mc.outer_paths");
  std::vector<double> brackets(in.outer_paths);
  std::vector<double> per_claim(in.outer_paths);
  parallel_for(in.outer_paths, in.threads, [&](std::size_t i) {
    const auto path = continue_intensity_path(in.intensity_model, in.intensity, *node,
                                              derive_seed(in.seed, i, Purpose::kOuterIntensity));
    const auto value = path_value(path, in.delay, expectation, ex1, lm, t, horizon, rule);
    brackets[i] = value.unreported_bracket;
    per_claim[i] = value.reported_per_claim;
  });
  const auto moments = sample_moments(brackets);
  std::tie(out.reported, out.unreported) =
      combine(compensated_sum(per_claim) / static_cast<double>(per_claim.size()), moments.mean);
  out.total = out.reported + out.unreported;
  out.outer_paths = in.outer_paths;
  out.outer_std_error =
      unreported_count > 0.0 ? unreported_count * moments.std_error / not_reported : 0.0;
  out.quadrature_error_estimate = std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace claimsim
