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

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "claimsim/report.hpp"
#include "claimsim/selftest.hpp"

int main(int argc, char** argv) {
  using namespace claimsim;

  CLI::App app{"claimsim: marked point process claim simulation and reserve pricing"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = 0;
  bool validate = false, mc_only = false, analytic_only = false, break_quadrature = false;

  auto* run = app.add_subcommand("run", "price a scenario config and write report files");
  run->add_option("config", config_path, "scenario JSON file")->required();
  run->add_flag("--validate", validate, "compare analytic and Monte Carlo; exit 2 on mismatch");
  auto* mc_flag = run->add_flag("--mc-only", mc_only, "skip the analytic reserve");
  auto* an_flag = run->add_flag("--analytic-only", analytic_only, "skip the Monte Carlo oracle");
  mc_flag->excludes(an_flag);
  run->add_option("--out", out_dir, "output directory")->capture_default_str();
  run->add_option("--threads", threads, "worker threads (0 = all cores)");
  run->add_flag("--break-quadrature", break_quadrature)->group("");

  bool quick = false;
  std::size_t paths = 100000;
  auto* selftest = app.add_subcommand("selftest", "run the built-in regression suite");
  selftest->add_flag("--quick", quick, "closed-form checks only");
  selftest->add_option("--paths", paths, "Monte Carlo paths per regression case")
      ->capture_default_str();
  selftest->add_option("--threads", threads, "worker threads (0 = all cores)");
  selftest->add_flag("--break-quadrature", break_quadrature)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::kConfig;
  }

  QuadratureOptions quadrature;
  if (break_quadrature) quadrature.rule = QuadratureRule::kLeftEndpoint;

  if (*run) {
    if (validate && (mc_only || analytic_only)) {
      std::cerr << "--validate needs both the analytic and the Monte Carlo estimate\n";
      return exit_code::kConfig;
    }
    RunOptions options;
    options.mode = mc_only ? RunMode::kMcOnly
                           : (analytic_only ? RunMode::kAnalyticOnly : RunMode::kBoth);
    options.validate = validate;
    options.out_dir = out_dir;
    options.threads = threads;
    options.quadrature = quadrature;
    return run_config_file(config_path, options, std::cout, std::cerr);
  }

  SelftestOptions options;
  options.quick = quick;
  options.threads = threads;
  options.mc_paths = paths;
  options.quadrature = quadrature;
  try {
    return print_checks(run_selftest(options), std::cout) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "selftest error: " << e.what() << "\n";
    return exit_code::kRuntime;
  }
}
