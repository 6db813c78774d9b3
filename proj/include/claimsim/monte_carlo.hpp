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
#include <functional>
#include <string>
#include <variant>

#include "claimsim/intensity.hpp"
#include "claimsim/market.hpp"
#include "claimsim/portfolio.hpp"
#include "claimsim/pricing.hpp"

namespace claimsim {

struct Unconditional {};
struct ConditionOnReportedCount {
  std::size_t reported;
};
using Conditioning = std::variant<Unconditional, ConditionOnReportedCount>;

inline constexpr std::size_t kMinPaths = 100;

struct McConfig {
  std::size_t paths = 100000;
  std::uint64_t seed = 0;
  double t = 0.0;
  double horizon = 1.0;
  TimeGrid grid;
  IntensityModel intensity;
  DelayLaw delay;
  MarkLaw first_mark;
  DevelopmentLaw development;
  MarketModel market;
  std::size_t policies = 1;
  Conditioning conditioning = Unconditional{};
  /// Pair paths with negated deflator normals.
  bool antithetic = false;
  unsigned threads = 0;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_effective = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

/// Mean of sample(i), i in [0, count), with 95% normal interval. Samples are
/// computed in parallel and reduced in index order.
McEstimate estimate_mean(std::size_t count, unsigned threads,
                         const std::function<double(std::size_t)>& sample);

/// Full-scenario estimate of (S*_t / I_t) E[A_T - A_t] at t = t0. Each path
/// simulates intensity, deflator and portfolio from
/// derive_seed(seed, path, kMonteCarloPath).
McEstimate mc_reserve(const McConfig& config);

/// Estimate conditional on R_t = target under deterministic intensity and
/// deflator, by bucketing simulated portfolios on their realized R_t.
/// Throws InsufficientDataError when the bucket has fewer than 100 paths.
McEstimate mc_conditional_reserve(const McConfig& config);

struct Comparison {
  double difference = 0.0;  ///< analytic - mc
  double std_error = 0.0;   ///< combined standard error used for z
  double z = 0.0;
  bool pass = false;
  bool hard_fail = false;   ///< zero standard error and a mismatch
};

/// z = (analytic.total - mc.mean) / se with se^2 = mc.se^2 +
/// analytic.outer_se^2; pass iff |z| <= 3.
Comparison compare(const ReserveResult& analytic, const McEstimate& mc);

}  // namespace claimsim
