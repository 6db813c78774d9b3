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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "claimsim/monte_carlo.hpp"
#include "claimsim/pricing.hpp"
#include "claimsim/scenario.hpp"

namespace claimsim {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kConfig = 1;
inline constexpr int kValidationFailed = 2;
inline constexpr int kUnsupportedRegime = 3;
inline constexpr int kRuntime = 4;
}  // namespace exit_code

enum class RunMode { kBoth, kAnalyticOnly, kMcOnly };

struct RunOptions {
  RunMode mode = RunMode::kBoth;
  /// Exit with kValidationFailed when analytic and MC disagree.
  bool validate = false;
  std::filesystem::path out_dir = ".";
  unsigned threads = 0;
  QuadratureOptions quadrature;
};

/// Report contents. Wall-clock timings are kept out of `report` so that
/// identical inputs give byte-identical files.
struct RunArtifacts {
  nlohmann::ordered_json report;
  std::string curve_csv;
  std::optional<ReserveResult> analytic;
  std::optional<McEstimate> mc;
  std::optional<Comparison> comparison;
  double analytic_seconds = 0.0;
  double mc_seconds = 0.0;
};

/// Columns: time,reporting_cdf,reporting_density,ibnr_prob,survival; every
/// value with 12 significant digits.
std::string curve_csv(const IntensityPath& path, const ReportingCurve& curve);

/// Runs the pricing pipeline. Propagates ConfigError and
/// UnsupportedRegimeError to the caller.
RunArtifacts run_scenario(const LoadedScenario& loaded, const RunOptions& options);

/// CLI entry point: loads, runs, writes report files, maps errors to exit
/// codes and prints diagnostics.
int run_config_file(const std::filesystem::path& config, const RunOptions& options,
                    std::ostream& out, std::ostream& err);

}  // namespace claimsim
