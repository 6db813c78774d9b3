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

#include "claimsim/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "claimsim/error.hpp"

namespace claimsim {
namespace {

using nlohmann::ordered_json;

std::string format12(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

ordered_json reserve_json(const ReserveResult& r) {
  ordered_json j;
  j["reported"] = r.reported;
  j["unreported"] = r.unreported;
  j["total"] = r.total;
  j["quadrature_step"] = r.quadrature_step;
  j["quadrature_error_estimate"] =
      std::isnan(r.quadrature_error_estimate) ? ordered_json(nullptr)
                                              : ordered_json(r.quadrature_error_estimate);
  j["outer_paths"] = r.outer_paths;
  j["outer_std_error"] = r.outer_std_error;
  return j;
}

ordered_json estimate_json(const McEstimate& e) {
  ordered_json j;
  j["mean"] = e.mean;
  j["std_error"] = e.std_error;
  j["n_effective"] = e.n_effective;
  j["ci95"] = {e.ci_low, e.ci_high};
  return j;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
}

}  // namespace

std::string curve_csv(const IntensityPath& path, const ReportingCurve& curve) {
  std::string out = "time,reporting_cdf,reporting_density,ibnr_prob,survival\r\n";
  for (std::size_t k = 0; k < curve.grid.size(); ++k) {
    const double survival = std::exp(-path.hazard_values()[k]);
    const double ibnr = std::max(0.0, (1.0 - survival) - curve.cdf[k]);
    out += format12(curve.grid[k]) + ',' + format12(curve.cdf[k]) + ',' +
           format12(curve.density[k]) + ',' + format12(ibnr) + ',' + format12(survival) + "\r\n";
  }
  return out;
}

RunArtifacts run_scenario(const LoadedScenario& loaded, const RunOptions& options) {
  const Scenario& s = loaded.scenario;
  RunArtifacts out;
  ordered_json& report = out.report;
  report["schema_version"] = kSchemaVersion;
  report["config_hash"] = loaded.hash;
  report["seed"] = s.seed;
  report["valuation"] = {{"t", s.t},
                         {"T", s.horizon},
                         {"n", s.policies},
                         {"reported_count", s.reported_count.value_or(0)}};

  const ReserveInputs inputs = make_reserve_inputs(s, options.threads, options.quadrature);
  const ReportingCurve curve = reporting_curve(inputs.intensity, s.delay, options.quadrature);
  out.curve_csv = curve_csv(inputs.intensity, curve);

  ordered_json curve_summary;
  curve_summary["reporting_cdf_t"] = reporting_cdf(inputs.intensity, s.delay, s.t, options.quadrature);
  curve_summary["ibnr_probability_t"] =
      ibnr_probability(inputs.intensity, s.delay, s.t, options.quadrature);
  curve_summary["survival_t"] = inputs.intensity.survival(s.t);
  ordered_json samples = ordered_json::array();
  const std::size_t last = s.grid.node_index(s.horizon).value_or(s.grid.locate(s.horizon).cell + 1);
  for (int i = 0; i <= 10; ++i) {
    const auto k = static_cast<std::size_t>(std::llround(i * static_cast<double>(last) / 10.0));
    samples.push_back({{"time", curve.grid[k]},
                       {"reporting_cdf", curve.cdf[k]},
                       {"reporting_density", curve.density[k]}});
  }
  curve_summary["samples"] = std::move(samples);
  report["reporting_curve"] = std::move(curve_summary);

  if (options.mode != RunMode::kMcOnly) {
    const auto start = std::chrono::steady_clock::now();
    out.analytic = reserve(valuation_state(s), inputs, s.horizon);
    out.analytic_seconds = seconds_since(start);
    report["analytic"] = reserve_json(*out.analytic);
  }
  if (options.mode != RunMode::kAnalyticOnly) {
    const auto start = std::chrono::steady_clock::now();
    const McConfig config = make_mc_config(s, options.threads);
    out.mc = mc_reserve(config);
    out.mc_seconds = seconds_since(start);
    ordered_json mc = estimate_json(*out.mc);
    mc["conditioning"] = s.t > s.grid.t0() ? "reported_count" : "unconditional";
    report["monte_carlo"] = std::move(mc);
  }
  if (out.analytic && out.mc) {
    out.comparison = compare(*out.analytic, *out.mc);
    report["comparison"] = {{"difference", out.comparison->difference},
                            {"std_error", out.comparison->std_error},
                            {"z", std::isfinite(out.comparison->z) ? ordered_json(out.comparison->z)
                                                                   : ordered_json(nullptr)},
                            {"pass", out.comparison->pass}};
  }
  return out;
}

int run_config_file(const std::filesystem::path& config, const RunOptions& options,
                    std::ostream& out, std::ostream& err) {
  try {
    const LoadedScenario loaded = load_scenario(config);
    const RunArtifacts artifacts = run_scenario(loaded, options);
    const auto report_path = options.out_dir / loaded.scenario.output.report;
    const auto curve_path = options.out_dir / loaded.scenario.output.curve;
    write_file(report_path, artifacts.report.dump(2) + "\n");
    write_file(curve_path, artifacts.curve_csv);

    if (artifacts.analytic) {
      out << "analytic reserve: " << format12(artifacts.analytic->total) << " (reported "
          << format12(artifacts.analytic->reported) << ", unreported "
          << format12(artifacts.analytic->unreported) << ") in " << artifacts.analytic_seconds
          << " s\n";
    }
    if (artifacts.mc) {
      out << "monte carlo:      " << format12(artifacts.mc->mean) << " +/- "
          << format12(artifacts.mc->std_error) << " in " << artifacts.mc_seconds << " s\n";
    }
    if (artifacts.comparison) {
      out << "comparison:       z = " << artifacts.comparison->z << " -> "
          << (artifacts.comparison->pass ? "PASS" : "FAIL") << "\n";
    }
    out << "wrote " << report_path.string() << " and " << curve_path.string() << "\n";
    if (options.validate && (!artifacts.comparison || !artifacts.comparison->pass)) {
      err << "validation failed: analytic and Monte Carlo estimates disagree\n";
      return exit_code::kValidationFailed;
    }
    return exit_code::kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return exit_code::kConfig;
  } catch (const UnsupportedRegimeError& e) {
    err << "unsupported pricing regime: " << e.what() << "\n";
    return exit_code::kUnsupportedRegime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kRuntime;
  }
}

}  // namespace claimsim
