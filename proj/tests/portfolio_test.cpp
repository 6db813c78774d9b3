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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "claimsim/error.hpp"
#include "test_support.hpp"

namespace claimsim {
namespace {

IntensityPath constant(double rate, double t_end) {
  return simulate_intensity_path(ConstantIntensity{rate}, TimeGrid(0.0, t_end), 0);
}

TEST(AccidentTime, InvertsThreshold) {
  const auto p = constant(1.0, 3.0);
  EXPECT_NEAR(accident_time_from_threshold(p, std::log(2.0)), 0.693147, 1e-6);
  const auto q = constant(1.0, 2.0);  // Gamma at t_end = 2
  EXPECT_TRUE(std::isinf(accident_time_from_threshold(q, 5.0)));
}

TEST(AccidentTime, ExponentialLawKolmogorovSmirnov) {
  // Gamma_{t_end} = 30, so truncation at the grid end has probability e^-30.
  // A single 5% KS test rejects a correct sampler one time in twenty, so each
  // sample is held to the 0.1% critical value and the average of sqrt(n) D
  // over 20 samples is compared with the Kolmogorov mean sqrt(pi/2) ln 2.
  const auto p = constant(1.0, 30.0);
  constexpr int kSamples = 20;
  std::vector<double> draws(100000);
  double scaled_sum = 0.0;
  int rejections = 0;
  for (int s = 0; s < kSamples; ++s) {
    for (std::size_t i = 0; i < draws.size(); ++i) {
      draws[i] = sample_accident_time(p, derive_seed(2024 + s, i, Purpose::kAccidentTime));
      ASSERT_TRUE(std::isfinite(draws[i]));
    }
    const double d = testing::ks_statistic(draws, [](double t) { return -std::expm1(-t); });
    EXPECT_LT(d, testing::ks_critical_strict(draws.size())) << "sample " << s;
    rejections += d >= testing::ks_critical(draws.size());
    scaled_sum += d * std::sqrt(static_cast<double>(draws.size()));
  }
  // Kolmogorov law: mean 0.8687, sd 0.2603.
  EXPECT_NEAR(scaled_sum / kSamples, 0.8687, 3.0 * 0.2603 / std::sqrt(kSamples));
  EXPECT_LE(rejections, 4);  // Binomial(20, 0.05) exceeds 4 with probability 0.003
}

TEST(Delay, AtomOnlyIsZero) {
  const DelayLaw law{1.0, NoDelayDensity{}};
  for (std::uint64_t s = 0; s < 100; ++s) EXPECT_EQ(sample_delay(law, s), 0.0);
}

TEST(Delay, ExponentialMean) {
  const DelayLaw law{0.0, ExponentialDelay{2.0}};
  constexpr int kDraws = 100000;
  double sum = 0.0;
  for (int i = 0; i < kDraws; ++i) sum += sample_delay(law, derive_seed(5, i, Purpose::kDelay));
  EXPECT_NEAR(sum / kDraws, 0.5, 3.0 * 0.5 / std::sqrt(kDraws));
}

TEST(Delay, AtomFraction) {
  const DelayLaw law{0.3, ExponentialDelay{2.0}};
  constexpr int kDraws = 100000;
  int zeros = 0;
  for (int i = 0; i < kDraws; ++i) {
    zeros += sample_delay(law, derive_seed(6, i, Purpose::kDelay)) == 0.0;
  }
  EXPECT_NEAR(static_cast<double>(zeros) / kDraws, 0.3, 0.0045);
}

TEST(Delay, GammaMeanAndCdf) {
  const DelayLaw law{0.25, GammaDelay{2.0, 4.0}};
  EXPECT_NEAR(law.mean(), 0.75 * 0.5, 1e-15);
  // G(x) = alpha0 + (1 - alpha0) (1 - e^{-4x}(1 + 4x)) for shape 2.
  for (double x : {0.0, 0.1, 0.5, 2.0}) {
    EXPECT_NEAR(law.cdf(x), 0.25 + 0.75 * (1.0 - std::exp(-4.0 * x) * (1.0 + 4.0 * x)), 1e-14);
    EXPECT_NEAR(law.density_at(x), 0.75 * 16.0 * x * std::exp(-4.0 * x), 1e-13);
  }
  EXPECT_EQ(law.cdf(-1.0), 0.0);
  constexpr int kDraws = 100000;
  double sum = 0.0;
  for (int i = 0; i < kDraws; ++i) sum += sample_delay(law, derive_seed(8, i, Purpose::kDelay));
  const double var = 0.75 * (2.0 / 16.0 + 0.25) - law.mean() * law.mean();
  EXPECT_NEAR(sum / kDraws, law.mean(), 3.0 * std::sqrt(var / kDraws));
}

TEST(Delay, Validation) {
  EXPECT_THROW((DelayLaw{1.2, NoDelayDensity{}}.validate()), ConfigError);
  EXPECT_THROW((DelayLaw{1.0, ExponentialDelay{1.0}}.validate()), ConfigError);
  EXPECT_THROW((DelayLaw{0.5, NoDelayDensity{}}.validate()), ConfigError);
  EXPECT_THROW((DelayLaw{0.5, GammaDelay{0.5, 1.0}}.validate()), ConfigError);
  try {
    DelayLaw{1.2, NoDelayDensity{}}.validate();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "delay.alpha0");
  }
}

TEST(Development, ZeroRateIsEmpty) {
  EXPECT_TRUE(sample_development(DevelopmentLaw{0.0, DeterministicMark{1.0}}, 3.0, 1).empty());
}

TEST(Development, PoissonCountAndCompoundMean) {
  const DevelopmentLaw law{2.0, ExponentialMark{0.5}};
  constexpr int kRuns = 100000;
  double count = 0.0, total = 0.0, total_sq = 0.0;
  for (int i = 0; i < kRuns; ++i) {
    const auto devs = sample_development(law, 3.0, derive_seed(9, i, Purpose::kDevelopment));
    double paid = 0.0;
    for (std::size_t j = 0; j < devs.size(); ++j) {
      ASSERT_GT(devs[j].offset, j == 0 ? 0.0 : devs[j - 1].offset);
      ASSERT_LE(devs[j].offset, 3.0);
      ASSERT_GE(devs[j].mark, 0.0);
      paid += devs[j].mark;
    }
    count += devs.size();
    total += paid;
    total_sq += paid * paid;
  }
  EXPECT_NEAR(count / kRuns, 6.0, 3.0 * std::sqrt(6.0) / std::sqrt(kRuns));
  const double mean = total / kRuns;
  const double se = std::sqrt((total_sq / kRuns - mean * mean) / kRuns);
  EXPECT_NEAR(mean, 3.0, 3.0 * se);  // lambda m t
}

PortfolioSpec spec(std::size_t n, double horizon = 3.0) {
  return {n, DelayLaw{0.3, ExponentialDelay{2.0}}, ExponentialMark{1.0},
          DevelopmentLaw{2.0, LogNormalMark{-1.0, 0.4}}, horizon};
}

bool same_claims(const std::vector<ClaimRecord>& a, const std::vector<ClaimRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].claim.has_value() != b[i].claim.has_value()) return false;
    if (!a[i].claim) continue;
    const Claim &x = *a[i].claim, &y = *b[i].claim;
    if (x.accident_time != y.accident_time || x.delay != y.delay ||
        x.first_mark != y.first_mark || x.developments.size() != y.developments.size()) {
      return false;
    }
    for (std::size_t j = 0; j < x.developments.size(); ++j) {
      if (x.developments[j].offset != y.developments[j].offset ||
          x.developments[j].mark != y.developments[j].mark) {
        return false;
      }
    }
  }
  return true;
}

TEST(SimulatePortfolio, Deterministic) {
  const auto path = constant(0.8, 4.0);
  EXPECT_TRUE(same_claims(simulate_portfolio(spec(3), path, 17), simulate_portfolio(spec(3), path, 17)));
  EXPECT_FALSE(same_claims(simulate_portfolio(spec(3), path, 17), simulate_portfolio(spec(3), path, 18)));
}

TEST(SimulatePortfolio, RecordInvariants) {
  const auto path = constant(1.5, 4.0);
  const auto claims = simulate_portfolio(spec(2000), path, 3);
  std::size_t late = 0;
  for (const auto& r : claims) {
    if (!r.claim) continue;
    const Claim& c = *r.claim;
    EXPECT_EQ(c.report_time, c.accident_time + c.delay);
    EXPECT_GE(c.delay, 0.0);
    EXPECT_GE(c.first_mark, 0.0);
    double prev = c.report_time;
    for (const auto& d : c.developments) {
      const double when = c.report_time + d.offset;
      EXPECT_GT(when, prev);
      EXPECT_LE(when, 3.0);
      EXPECT_GE(d.mark, 0.0);
      prev = when;
    }
    if (c.report_time > 3.0) {
      ++late;
      EXPECT_TRUE(c.developments.empty());
    }
  }
  EXPECT_GT(late, 0u);  // IBNR claims at the horizon are kept
}

TEST(SimulatePortfolio, SubstreamIsolation) {
  const auto path = constant(0.8, 4.0);
  PortfolioSeeds seeds = PortfolioSeeds::from(1234);
  const auto base = simulate_portfolio(spec(50), path, seeds);
  seeds.delay ^= 0xdeadbeef;
  const auto changed = simulate_portfolio(spec(50), path, seeds);
  bool delays_differ = false;
  for (std::size_t i = 0; i < base.size(); ++i) {
    ASSERT_EQ(base[i].claim.has_value(), changed[i].claim.has_value());
    if (!base[i].claim) continue;
    EXPECT_EQ(base[i].claim->accident_time, changed[i].claim->accident_time);
    EXPECT_EQ(base[i].claim->first_mark, changed[i].claim->first_mark);
    delays_differ = delays_differ || base[i].claim->delay != changed[i].claim->delay;
  }
  EXPECT_TRUE(delays_differ);
}

TEST(SimulatePortfolio, PolicyOrderIndependent) {
  // Policy i's record depends only on (seed, i): a larger portfolio extends
  // a smaller one.
  const auto path = constant(0.8, 4.0);
  const auto small = simulate_portfolio(spec(5), path, 99);
  auto large = simulate_portfolio(spec(9), path, 99);
  large.resize(5);
  EXPECT_TRUE(same_claims(small, large));
}

TEST(SimulatePortfolio, AccidentIndicatorsFactorize) {
  const auto path = constant(0.7, 2.0);
  constexpr std::size_t kPortfolios = 100000;
  std::size_t both = 0, first = 0, second = 0;
  for (std::size_t p = 0; p < kPortfolios; ++p) {
    const auto claims = simulate_portfolio(spec(2, 2.0), path, derive_seed(77, p, Purpose::kPortfolio));
    const bool a = claims[0].claim && claims[0].claim->accident_time <= 1.0;
    const bool b = claims[1].claim && claims[1].claim->accident_time <= 1.0;
    first += a;
    second += b;
    both += a && b;
  }
  const double p1 = static_cast<double>(first) / kPortfolios;
  const double p2 = static_cast<double>(second) / kPortfolios;
  const double p12 = static_cast<double>(both) / kPortfolios;
  EXPECT_NEAR(p12, p1 * p2, 3.0 * testing::binomial_se(p1 * p2, kPortfolios));
}

TEST(SimulatePortfolio, RejectsEmptyPortfolio) {
  EXPECT_THROW(simulate_portfolio(spec(0), constant(1.0, 3.0), 1), ConfigError);
}

ClaimRecord manual(std::size_t policy, double tau0, double delay, std::vector<Development> devs) {
  return {policy, Claim{tau0, delay, tau0 + delay, 1.0, std::move(devs)}};
}

TEST(ObservedState, UnreportedClaimIsInvisible) {
  const std::vector<ClaimRecord> claims{manual(0, 2.0, 0.5, {})};
  const auto s = observed_state(claims, 2.0);
  EXPECT_EQ(s.reported_count, 0u);
  EXPECT_TRUE(s.histories.empty());
}

TEST(ObservedState, FiltersDevelopments) {
  const std::vector<ClaimRecord> claims{manual(0, 0.5, 0.5, {{0.5, 2.0}, {1.5, 3.0}})};
  const auto s = observed_state(claims, 2.0);
  ASSERT_EQ(s.reported_count, 1u);
  const auto& h = s.histories.front();
  EXPECT_EQ(h.report_time, 1.0);
  ASSERT_EQ(h.developments.size(), 1u);
  EXPECT_EQ(h.developments[0].time, 1.5);
}

TEST(ObservedState, AllReported) {
  const std::vector<ClaimRecord> claims{manual(0, 0.1, 0.0, {}), manual(1, 0.2, 0.3, {}),
                                        manual(2, 0.4, 0.1, {})};
  const auto s = observed_state(claims, 1.0);
  EXPECT_EQ(s.reported_count, 3u);
  EXPECT_EQ(s.policies, 3u);
  EXPECT_EQ(reported_count(claims, 1.0), 3u);
}

TEST(ObservedState, MonotoneInTime) {
  const auto claims = simulate_portfolio(spec(200), constant(1.0, 4.0), 31);
  auto events = [](const PortfolioState& s) {
    std::size_t n = 0;
    for (const auto& h : s.histories) n += 1 + h.developments.size();
    return n;
  };
  PortfolioState prev = observed_state(claims, 0.0);
  for (int i = 1; i <= 30; ++i) {
    const auto next = observed_state(claims, 0.1 * i);
    EXPECT_GE(next.reported_count, prev.reported_count);
    EXPECT_GE(events(next), events(prev));
    for (const auto& h : prev.histories) {
      const auto it = std::find_if(next.histories.begin(), next.histories.end(),
                                   [&](const VisibleHistory& x) { return x.policy == h.policy; });
      ASSERT_NE(it, next.histories.end());
      ASSERT_GE(it->developments.size(), h.developments.size());
    }
    for (const auto& h : next.histories) {
      EXPECT_LE(h.report_time, 0.1 * i);
      for (const auto& e : h.developments) EXPECT_LE(e.time, 0.1 * i);
    }
    prev = next;
  }
}

}  // namespace
}  // namespace claimsim
