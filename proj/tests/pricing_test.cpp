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

#include <gtest/gtest.h>

#include <cmath>

#include "claimsim/error.hpp"
#include "test_support.hpp"

namespace claimsim {
namespace {

const double kE1 = std::exp(-1.0);
const double kE2 = std::exp(-2.0);

IntensityPath constant(double rate, double t_end, double step = kDefaultStep) {
  return simulate_intensity_path(ConstantIntensity{rate}, TimeGrid(0.0, t_end, step), 0);
}

const DelayLaw kLife{1.0, NoDelayDensity{}};
const DelayLaw kExp2{0.0, ExponentialDelay{2.0}};

ReserveInputs inputs(double mu, DelayLaw delay, MarkLaw first, DevelopmentLaw dev,
                     double rate = 0.0, double t_end = 2.0,
                     double step = kDefaultStep) {
  const TimeGrid g(0.0, t_end, step);
  const DeterministicDeflator deflator{1.0, rate};
  ReserveInputs in{ConstantIntensity{mu},
                   simulate_intensity_path(ConstantIntensity{mu}, g, 0),
                   deflator,
                   simulate_market(deflator, g, 0),
                   delay,
                   first,
                   dev};
  return in;
}

TEST(TildeM, Examples) {
  const DevelopmentLaw dev{2.0, ExponentialMark{0.5}};
  EXPECT_EQ(tilde_m(dev, -0.5), 0.0);
  EXPECT_DOUBLE_EQ(tilde_m(dev, 3.0), 3.0);
  EXPECT_EQ(tilde_m(DevelopmentLaw{0.0, ExponentialMark{0.5}}, 4.0), 0.0);
}

TEST(ReportingCdf, LifeReduction) {
  EXPECT_NEAR(reporting_cdf(constant(1.0, 2.0), kLife, 1.0), 1.0 - kE1, 1e-12);
  const auto pw = simulate_intensity_path(PiecewiseConstantIntensity{{0.0, 1.0}, {1.0, 3.0}},
                                          TimeGrid(0.0, 3.0), 0);
  for (int i = 0; i <= 10; ++i) {
    const double t = 0.3 * i;
    EXPECT_NEAR(reporting_cdf(pw, kLife, t), -std::expm1(-pw.hazard(t)), 1e-10) << t;
  }
}

TEST(ReportingCdf, ExponentialDelayClosedForm) {
  const auto p = constant(1.0, 2.0);
  EXPECT_NEAR(reporting_cdf(p, kExp2, 1.0), 1.0 - 2.0 * kE1 + kE2, 1e-6);
  EXPECT_EQ(reporting_cdf(p, kExp2, 0.0), 0.0);
  for (double t : {0.25, 0.5, 1.5, 2.0}) {
    const double et = std::exp(-t);
    EXPECT_NEAR(reporting_cdf(p, kExp2, t), 1.0 - 2.0 * et + et * et, 1e-6) << t;
  }
}

TEST(ReportingCdf, GammaDelaySymbolicOracle) {
  // Oracle: symbolic integration of the convolution for mu = 1,
  // alpha0 = 0.3, gamma(2, 4) delay.
  const DelayLaw law{0.3, GammaDelay{2.0, 4.0}};
  const auto p = constant(1.0, 2.0);
  EXPECT_NEAR(reporting_cdf(p, law, 1.0), 0.45889708499301293, 1e-6);
  EXPECT_NEAR(reporting_density(p, law, 1.0), 0.47699817889641744, 1e-5);
}

TEST(ReportingCdf, SecondOrderConvergence) {
  const double exact = 1.0 - 2.0 * kE1 + kE2;
  const double h = 1.0 / 64;
  const double coarse = reporting_cdf(constant(1.0, 1.0, h), kExp2, 1.0) - exact;
  const double fine = reporting_cdf(constant(1.0, 1.0, h / 2), kExp2, 1.0) - exact;
  EXPECT_GE(coarse / fine, 3.5);
  EXPECT_LE(coarse / fine, 4.5);
}

TEST(ReportingDensity, ClosedForms) {
  const auto p = constant(1.0, 2.0);
  EXPECT_NEAR(reporting_density(p, kLife, 1.0), kE1, 1e-12);
  // Integral of 2 e^{-2(t-u)} e^{-u} over [0, 1].
  EXPECT_NEAR(reporting_density(p, kExp2, 1.0), 2.0 * (kE1 - kE2), 1e-6);
}

TEST(ReportingDensity, IntegratesToCdf) {
  // Both the density and its running trapezoid carry O(h^2) error.
  const auto p = constant(1.3, 3.0);
  const DelayLaw law{0.4, GammaDelay{2.0, 3.0}};
  const auto curve = reporting_curve(p, law);
  double running = 0.0;
  for (std::size_t k = 1; k < curve.grid.size(); ++k) {
    running += 0.5 * curve.grid.step() * (curve.density[k - 1] + curve.density[k]);
    ASSERT_NEAR(running, curve.cdf[k], 5e-6) << curve.grid[k];
  }
  // Symbolic oracle at t = 3.
  EXPECT_NEAR(curve.cdf.back(), 0.954747135468878, 1e-6);
  EXPECT_NEAR(curve.density.back(), 0.0578661274185820, 1e-6);
}

TEST(ReportingDensity, SecondOrderConvergence) {
  const DelayLaw law{0.4, GammaDelay{2.0, 3.0}};
  const double exact = 0.0578661274185820;
  auto err = [&](double h) { return reporting_density(constant(1.3, 3.0, h), law, 3.0) - exact; };
  const double ratio = err(1.0 / 100) / err(1.0 / 200);
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 4.5);
}

TEST(ReportingCurve, MatchesPointwiseAndRecursion) {
  const auto p = simulate_intensity_path(PiecewiseConstantIntensity{{0.0, 0.7}, {0.6, 1.4}},
                                         TimeGrid(0.0, 2.0), 0);
  const DelayLaw exp{0.2, ExponentialDelay{2.0}};
  const DelayLaw same_as_gamma{0.2, GammaDelay{1.0, 2.0}};  // general O(N^2) route
  const auto fast = reporting_curve(p, exp);
  const auto slow = reporting_curve(p, same_as_gamma);
  for (std::size_t k = 0; k < fast.grid.size(); k += 37) {
    EXPECT_NEAR(fast.cdf[k], slow.cdf[k], 1e-12);
    EXPECT_NEAR(fast.density[k], slow.density[k], 1e-10);
    EXPECT_NEAR(fast.cdf[k], reporting_cdf(p, exp, fast.grid[k]), 1e-12);
    EXPECT_NEAR(fast.density[k], reporting_density(p, exp, fast.grid[k]), 1e-10);
  }
}

TEST(IbnrProbability, Examples) {
  const auto p = constant(1.0, 2.0);
  EXPECT_EQ(ibnr_probability(p, kLife, 0.7), 0.0);
  EXPECT_NEAR(ibnr_probability(p, kExp2, 1.0), (1.0 - kE1) - (1.0 - 2.0 * kE1 + kE2), 1e-6);
}

TEST(IbnrProbability, NonNegativeAndVanishing) {
  const auto p = constant(2.0, 20.0);
  const DelayLaw law{0.1, GammaDelay{3.0, 2.0}};
  for (int i = 0; i <= 40; ++i) EXPECT_GE(ibnr_probability(p, law, 0.5 * i), 0.0);
  EXPECT_LT(ibnr_probability(p, law, 20.0), 1e-6);
}

TEST(IbnrProbability, MatchesSimulation) {
  const auto p = constant(0.9, 3.0);
  const DelayLaw law{0.3, GammaDelay{2.0, 2.5}};
  constexpr std::size_t kClaims = 100000;
  const double t = 1.2;
  std::size_t ibnr = 0;
  for (std::size_t i = 0; i < kClaims; ++i) {
    const double tau0 = sample_accident_time(p, derive_seed(3, i, Purpose::kAccidentTime));
    const double theta = sample_delay(law, derive_seed(3, i, Purpose::kDelay));
    ibnr += tau0 <= t && tau0 + theta > t;
  }
  const double expected = ibnr_probability(p, law, t);
  EXPECT_NEAR(static_cast<double>(ibnr) / kClaims, expected,
              3.0 * testing::binomial_se(expected, kClaims));
}

TEST(Reserve, AllReportedDevelopmentOnly) {
  const auto in = inputs(1.0, kExp2, DeterministicMark{1.0}, {2.0, ExponentialMark{0.5}}, 0.0, 3.0);
  const auto r = reserve(PortfolioState::counts(1.0, 10, 10), in, 3.0);
  EXPECT_NEAR(r.reported, 20.0, 1e-12);
  EXPECT_EQ(r.unreported, 0.0);
  EXPECT_NEAR(r.total, 20.0, 1e-12);
}

TEST(Reserve, EmptyPortfolio) {
  const auto in = inputs(1.0, kExp2, DeterministicMark{1.0}, {2.0, ExponentialMark{0.5}});
  EXPECT_EQ(reserve(PortfolioState::counts(0.0, 0, 0), in, 2.0).total, 0.0);
}

TEST(Reserve, LifeReduction) {
  const auto in = inputs(1.0, kLife, DeterministicMark{1.0}, {0.0, DeterministicMark{1.0}});
  const auto r = reserve(PortfolioState::counts(0.0, 1, 0), in, 1.0);
  EXPECT_NEAR(r.total, 1.0 - kE1, 1e-6);
}

// Trapezoid error at the default daily step is O(h^2) ~ 2e-6 relative.
constexpr double kRel = 5e-6;

TEST(Reserve, SymbolicOracleUnitDeflator) {
  // E[X1] = 1.5, lambda m = 0.6, mu = 1, exponential delay rate 2, T = 2.
  const auto in = inputs(1.0, kExp2, ExponentialMark{1.5}, {2.0, DeterministicMark{0.3}});
  const auto r0 = reserve(PortfolioState::counts(0.0, 10, 0), in, 2.0);
  EXPECT_NEAR(r0.unreported, 10.0 * 1.5783752568405782, kRel * 15.8);
  EXPECT_EQ(r0.reported, 0.0);
  const auto r = reserve(PortfolioState::counts(0.5, 10, 3), in, 2.0);
  EXPECT_NEAR(r.reported, 0.6 * 3.0 * 1.5, 1e-12);
  EXPECT_NEAR(r.unreported, 7.0 * 1.4071986585931603, kRel * 9.9);
  EXPECT_NEAR(r.total, r.reported + r.unreported, 1e-12);
}

TEST(Reserve, SymbolicOracleDiscountingDeflator) {
  const double rate = 0.05;
  const auto in = inputs(1.0, kExp2, ExponentialMark{1.5}, {2.0, DeterministicMark{0.3}}, rate);
  EXPECT_NEAR(reserve(PortfolioState::counts(0.0, 1, 0), in, 2.0).total, 1.4949818415285014, kRel * 1.5);
  const auto r = reserve(PortfolioState::counts(0.5, 10, 3), in, 2.0);
  EXPECT_NEAR(r.reported, 0.6 * 3.0 * -std::expm1(-rate * 1.5) / rate, 1e-6);
  EXPECT_NEAR(r.unreported, 7.0 * 1.3565970050652650, kRel * 9.5);
}

TEST(Reserve, SecondOrderInStep) {
  const double exact = 1.5783752568405782;
  auto err = [&](double h) {
    const auto in = inputs(1.0, kExp2, ExponentialMark{1.5}, {2.0, DeterministicMark{0.3}}, 0.0,
                           2.0, h);
    return reserve(PortfolioState::counts(0.0, 1, 0), in, 2.0).total - exact;
  };
  const double ratio = err(1.0 / 32) / err(1.0 / 64);
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 4.5);
}

TEST(Reserve, QuadratureErrorEstimateIsHonest) {
  const auto in = inputs(1.0, kExp2, ExponentialMark{1.5}, {2.0, DeterministicMark{0.3}}, 0.0,
                         2.0, 1.0 / 64);
  const auto r = reserve(PortfolioState::counts(0.0, 1, 0), in, 2.0);
  const double actual = std::abs(r.total - 1.5783752568405782);
  EXPECT_GT(r.quadrature_error_estimate, 0.5 * actual);
  EXPECT_LT(r.quadrature_error_estimate, 2.0 * actual);
}

TEST(Reserve, LinearInPolicyCounts) {
  const auto in = inputs(0.8, DelayLaw{0.3, GammaDelay{2.0, 4.0}}, LogNormalMark{0.0, 0.5},
                         {2.0, ExponentialMark{0.5}}, 0.03, 3.0);
  const auto a = reserve(PortfolioState::counts(1.0, 7, 2), in, 3.0);
  const auto b = reserve(PortfolioState::counts(1.0, 14, 4), in, 3.0);
  EXPECT_DOUBLE_EQ(b.reported, 2.0 * a.reported);
  EXPECT_DOUBLE_EQ(b.unreported, 2.0 * a.unreported);
  EXPECT_DOUBLE_EQ(b.total, 2.0 * a.total);
}

TEST(Reserve, Errors) {
  const auto in = inputs(1.0, kExp2, ExponentialMark{1.5}, {2.0, DeterministicMark{0.3}});
  EXPECT_THROW(reserve(PortfolioState::counts(0.0, 2, 3), in, 2.0), ConfigError);
  EXPECT_THROW(reserve(PortfolioState::counts(0.0, 2, 0), in, 2.5), OutOfRangeError);
  EXPECT_THROW(reserve(PortfolioState::counts(1.5, 2, 0), in, 1.0), ConfigError);

  // P(tau1 > 1) = e^{-30} is below the degeneracy threshold.
  const auto saturated = inputs(30.0, kLife, ExponentialMark{1.0}, {1.0, DeterministicMark{1.0}});
  EXPECT_THROW(reserve(PortfolioState::counts(1.0, 2, 1), saturated, 2.0), DegenerateStateError);
  EXPECT_NO_THROW(reserve(PortfolioState::counts(1.0, 2, 2), saturated, 2.0));

  const TimeGrid g(0.0, 2.0, 1.0 / 52);
  const LogOrnsteinUhlenbeck ou{1.0, 0.0, 0.4, 1.0};
  const MartingaleDeflator correlated{1.0, 0.2, 0.5};
  ReserveInputs stochastic{ou, simulate_intensity_path(ou, g, 1), correlated,
                           simulate_market(correlated, g, 1), kExp2, ExponentialMark{1.0},
                           DevelopmentLaw{1.0, DeterministicMark{1.0}}};
  try {
    reserve(PortfolioState::counts(0.0, 3, 0), stochastic, 2.0);
    ADD_FAILURE() << "expected UnsupportedRegimeError";
  } catch (const UnsupportedRegimeError& e) {
    EXPECT_NE(std::string(e.what()).find("--mc-only"), std::string::npos);
  }
}

TEST(Reserve, StochasticIntensityReproducible) {
  const TimeGrid g(0.0, 2.0, 1.0 / 52);
  const LogOrnsteinUhlenbeck ou{1.5, std::log(0.8), 0.5, 0.8};
  const DeterministicDeflator flat{};
  ReserveInputs in{ou, simulate_intensity_path(ou, g, 1), flat, simulate_market(flat, g, 1),
                   DelayLaw{0.2, ExponentialDelay{3.0}}, DeterministicMark{0.4},
                   DevelopmentLaw{1.5, DeterministicMark{0.4}}};
  in.outer_paths = 500;
  in.seed = 77;
  const auto a = reserve(PortfolioState::counts(0.0, 5, 0), in, 2.0);
  in.threads = 3;
  const auto b = reserve(PortfolioState::counts(0.0, 5, 0), in, 2.0);
  EXPECT_EQ(a.total, b.total);
  EXPECT_GT(a.outer_std_error, 0.0);
  EXPECT_EQ(a.outer_paths, 500u);
  EXPECT_TRUE(std::isnan(a.quadrature_error_estimate));
}

}  // namespace
}  // namespace claimsim
