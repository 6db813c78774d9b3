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

#include "claimsim/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "claimsim/monte_carlo.hpp"

namespace claimsim {
namespace {

std::string describe(double got, double want, double tol) {
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, "got %.12g, want %.12g, |diff| %.3g (tol %.1g)", got, want,
                std::abs(got - want), tol);
  return buffer;
}

CheckResult near(std::string name, double got, double want, double tol) {
  return {std::move(name), std::abs(got - want) <= tol, describe(got, want, tol)};
}

IntensityPath constant_path(double rate, double t_end, double step) {
  return simulate_intensity_path(ConstantIntensity{rate}, TimeGrid(0.0, t_end, step), 0);
}

Scenario base_scenario(std::uint64_t seed, double horizon) {
  return Scenario{.seed = seed,
                  .grid = TimeGrid(0.0, horizon),
                  .intensity = ConstantIntensity{1.0},
                  .delay = DelayLaw{1.0, NoDelayDensity{}},
                  .first_mark = DeterministicMark{1.0},
                  .development = DevelopmentLaw{0.0, DeterministicMark{1.0}},
                  .market = DeterministicDeflator{1.0, 0.0},
                  .policies = 1,
                  .t = 0.0,
                  .horizon = horizon,
                  .reported_count = std::nullopt,
                  .mc = {},
                  .output = {}};
}

}  // namespace

std::vector<RegressionCase> regression_cases(std::size_t mc_paths) {
  std::vector<RegressionCase> cases;

  Scenario life = base_scenario(101, 1.0);
  cases.push_back({"life_reduction", life});

  Scenario ibnr = base_scenario(202, 2.0);
  ibnr.intensity = ConstantIntensity{0.8};
  ibnr.delay = DelayLaw{0.0, ExponentialDelay{2.0}};
  ibnr.first_mark = ExponentialMark{1.0};
  ibnr.policies = 5;
  cases.push_back({"pure_ibnr", ibnr});

  Scenario dev = base_scenario(303, 2.0);
  dev.intensity = ConstantIntensity{0.5};
  dev.first_mark = DeterministicMark{0.1};
  dev.development = DevelopmentLaw{3.0, LogNormalMark{-1.0, 0.5}};
  dev.policies = 5;
  cases.push_back({"development_only", dev});

  Scenario mixed = base_scenario(404, 3.0);
  mixed.intensity = PiecewiseConstantIntensity{{0.0, 1.0}, {0.6, 1.2}};
  mixed.delay = DelayLaw{0.3, GammaDelay{2.0, 4.0}};
  mixed.first_mark = LogNormalMark{0.0, 0.5};
  mixed.development = DevelopmentLaw{2.0, ExponentialMark{0.5}};
  mixed.market = DeterministicDeflator{1.0, 0.03};
  mixed.policies = 8;
  cases.push_back({"mixed", mixed});

  Scenario stochastic = base_scenario(505, 2.0);
  stochastic.intensity = LogOrnsteinUhlenbeck{1.5, std::log(0.8), 0.5, 0.8};
  stochastic.delay = DelayLaw{0.2, ExponentialDelay{3.0}};
  stochastic.first_mark = ExponentialMark{1.0};
  stochastic.development = DevelopmentLaw{1.5, DeterministicMark{0.4}};
  stochastic.policies = 5;
  stochastic.mc.outer_paths = 4000;
  cases.push_back({"stochastic_intensity", stochastic});

  Scenario martingale = base_scenario(606, 2.0);
  martingale.intensity = ConstantIntensity{0.7};
  martingale.delay = DelayLaw{0.5, ExponentialDelay{1.5}};
  martingale.development = DevelopmentLaw{1.0, ExponentialMark{0.5}};
  martingale.market = MartingaleDeflator{1.2, 0.3, 0.0};
  martingale.policies = 5;
  cases.push_back({"martingale_deflator", martingale});

  for (auto& c : cases) c.scenario.mc.paths = mc_paths;
  return cases;
}

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  const QuadratureOptions& q = options.quadrature;
  std::vector<CheckResult> checks;
  const DelayLaw exp2{0.0, ExponentialDelay{2.0}};
  const DelayLaw atom{1.0, NoDelayDensity{}};
  const double e1 = std::exp(-1.0), e2 = std::exp(-2.0);
  const double cdf_exact = 1.0 - 2.0 * e1 + e2;

  const auto path = constant_path(1.0, 1.0, kDefaultStep);
  checks.push_back(near("reporting_cdf closed form", reporting_cdf(path, exp2, 1.0, q), cdf_exact, 1e-6));
  checks.push_back(near("reporting_density closed form", reporting_density(path, exp2, 1.0, q),
                        2.0 * (e1 - e2), 1e-6));
  checks.push_back(near("ibnr_probability closed form", ibnr_probability(path, exp2, 1.0, q),
                        (1.0 - e1) - cdf_exact, 1e-6));
  {
    const auto curve = reporting_curve(path, exp2, q);
    const double integrated = curve.grid.integrate(curve.density, 0.0, 1.0);
    checks.push_back(near("density integrates to cdf", integrated, curve.cdf.back(), 1e-6));
  }
  {
    const double coarse = reporting_cdf(path, exp2, 1.0, q) - cdf_exact;
    const double fine =
        reporting_cdf(constant_path(1.0, 1.0, kDefaultStep / 2), exp2, 1.0, q) - cdf_exact;
    const double ratio = coarse / fine;
    checks.push_back({"trapezoid order (error ratio)", ratio >= 3.5 && ratio <= 4.5,
                      "ratio " + std::to_string(ratio) + " (want [3.5, 4.5])"});
  }
  {
    const auto pw = simulate_intensity_path(PiecewiseConstantIntensity{{0.0, 1.0}, {1.0, 3.0}},
                                            TimeGrid(0.0, 3.0), 0);
    double worst = 0.0;
    for (int i = 1; i <= 10; ++i) {
      const double t = 0.3 * i;
      worst = std::max(worst, std::abs(reporting_cdf(pw, atom, t, q) - (1.0 - pw.survival(t))));
    }
    checks.push_back({"life reduction cdf = 1 - survival", worst <= 1e-10,
                      "max |diff| " + std::to_string(worst)});
  }
  {
    const auto life = regression_cases(kMinPaths).front().scenario;
    auto inputs = make_reserve_inputs(life, options.threads, q);
    const auto r = reserve(valuation_state(life), inputs, life.horizon);
    checks.push_back(near("life reserve closed form", r.total, 1.0 - e1, 1e-6));
  }
  {
    Scenario s = base_scenario(1, 3.0);
    s.policies = 10;
    s.development = DevelopmentLaw{2.0, DeterministicMark{0.5}};
    s.t = 1.0;
    s.reported_count = 10;
    const auto r = reserve(valuation_state(s), make_reserve_inputs(s, options.threads, q), 3.0);
    checks.push_back(near("fully reported reserve", r.total, 20.0, 1e-9));
  }

  if (options.quick) return checks;

  for (const auto& c : regression_cases(options.mc_paths)) {
    const auto analytic =
        reserve(valuation_state(c.scenario), make_reserve_inputs(c.scenario, options.threads, q),
                c.scenario.horizon);
    const auto mc = mc_reserve(make_mc_config(c.scenario, options.threads));
    const auto cmp = compare(analytic, mc);
    char buffer[200];
    std::snprintf(buffer, sizeof buffer, "analytic %.6f, mc %.6f +/- %.6f, z = %+.2f",
                  analytic.total, mc.mean, mc.std_error, cmp.z);
    checks.push_back({"oracle agreement: " + c.name, cmp.pass, buffer});
  }
  return checks;
}

bool print_checks(const std::vector<CheckResult>& checks, std::ostream& out) {
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    char line[128];
    std::snprintf(line, sizeof line, "%-4s  %-40s  ", c.pass ? "PASS" : "FAIL", c.name.c_str());
    out << line << c.detail << "\n";
  }
  out << (all ? "all checks passed" : "some checks FAILED") << " (" << checks.size()
      << " checks)\n";
  return all;
}

}  // namespace claimsim
