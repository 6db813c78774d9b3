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
#include <iosfwd>
#include <string>
#include <vector>

#include "claimsim/pricing.hpp"
#include "claimsim/scenario.hpp"

namespace claimsim {

struct RegressionCase {
  std::string name;
  Scenario scenario;
};

/// Valuation-at-inception scenarios covering the life-insurance reduction,
/// pure IBNR delay, development-dominated payments, a mixed portfolio,
/// stochastic intensity and a martingale deflator.
std::vector<RegressionCase> regression_cases(std::size_t mc_paths = 100000);

struct SelftestOptions {
  bool quick = false;
  unsigned threads = 0;
  std::size_t mc_paths = 100000;
  QuadratureOptions quadrature;
};

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

/// Closed-form quadrature checks, plus (unless quick) analytic-vs-MC
/// agreement on every regression case.
std::vector<CheckResult> run_selftest(const SelftestOptions& options);

/// Prints one line per check; returns true when all pass.
bool print_checks(const std::vector<CheckResult>& checks, std::ostream& out);

}  // namespace claimsim
