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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "claimsim/intensity.hpp"
#include "claimsim/market.hpp"
#include "claimsim/monte_carlo.hpp"
#include "claimsim/portfolio.hpp"
#include "claimsim/pricing.hpp"
#include "claimsim/time_grid.hpp"

namespace claimsim {

inline constexpr int kSchemaVersion = 1;

struct McSettings {
  std::size_t paths = 100000;
  bool antithetic = false;
  std::size_t outer_paths = 2000;
};

struct OutputSettings {
  std::string report = "report.json";
  std::string curve = "curve.csv";
};

/// A complete pricing scenario: one JSON config file.
struct Scenario {
  std::uint64_t seed;
  TimeGrid grid;
  IntensityModel intensity;
  DelayLaw delay;
  MarkLaw first_mark;
  DevelopmentLaw development;
  MarketModel market;
  std::size_t policies;
  double t;
  double horizon;
  /// R_t; required when t is after the grid start.
  std::optional<std::size_t> reported_count;
  McSettings mc;
  OutputSettings output;

  /// Checks every model invariant; throws ConfigError naming the field.
  void validate() const;
};

/// Throws ConfigError with a dotted field path; unknown keys are rejected.
Scenario parse_scenario(const nlohmann::json& config);

struct LoadedScenario {
  Scenario scenario;
  std::string hash;
};

/// Reads and parses a config file. Syntax errors are reported with line and
/// column.
LoadedScenario load_scenario(const std::filesystem::path& path);
LoadedScenario load_scenario_text(std::string_view text);

/// "fnv1a64:" followed by 16 hex digits of the FNV-1a hash of the raw bytes.
std::string config_hash(std::string_view text);

/// Seed of the reference (observed) intensity and deflator paths used by the
/// analytic side of a run.
std::uint64_t reference_seed(const Scenario& s) noexcept;

PortfolioState valuation_state(const Scenario& s);
McConfig make_mc_config(const Scenario& s, unsigned threads);
ReserveInputs make_reserve_inputs(const Scenario& s, unsigned threads,
                                  const QuadratureOptions& quadrature = {});

}  // namespace claimsim
