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

#include "claimsim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "claimsim/error.hpp"

namespace claimsim {
namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// Typed access to one JSON object that remembers which keys were consumed.
class Fields {
 public:
  Fields(const json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw ConfigError("must be an object", path_.empty() ? "<root>" : path_);
  }

  bool has(const std::string& key) const { return object_.contains(key); }
  std::string field(const std::string& key) const { return join(path_, key); }

  const json& raw(const std::string& key) {
    if (!object_.contains(key)) throw ConfigError("required field is missing", field(key));
    used_.insert(key);
    return object_.at(key);
  }

  double number(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError("must be a number", field(key));
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError("must be finite", field(key));
    return x;
  }
  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  std::uint64_t unsigned_integer(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      throw ConfigError("must be a nonnegative integer", field(key));
    }
    return v.get<std::uint64_t>();
  }
  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    return has(key) ? unsigned_integer(key) : fallback;
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError("must be true or false", field(key));
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError("must be a string", field(key));
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& fallback) {
    return has(key) ? string(key) : fallback;
  }

  std::vector<double> numbers(const std::string& key) {
    const json& v = raw(key);
    if (!v.is_array()) throw ConfigError("must be an array of numbers", field(key));
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError("must be an array of numbers", field(key));
      out.push_back(x.get<double>());
    }
    return out;
  }

  Fields object(const std::string& key) { return Fields(raw(key), field(key)); }

  /// Rejects keys that were never read.
  void finish() const {
    for (const auto& item : object_.items()) {
      if (!used_.count(item.key())) throw ConfigError("unknown field", field(item.key()));
    }
  }

 private:
  const json& object_;
  std::string path_;
  std::set<std::string> used_;
};

MarkLaw parse_mark(Fields f) {
  const std::string kind = f.string("kind");
  MarkLaw law;
  if (kind == "deterministic") {
    law = DeterministicMark{f.number("value")};
  } else if (kind == "exponential") {
    law = ExponentialMark{f.number("mean")};
  } else if (kind == "lognormal") {
    law = LogNormalMark{f.number("mu_ln"), f.number("sigma_ln")};
  } else {
    throw ConfigError("must be one of deterministic, exponential, lognormal", f.field("kind"));
  }
  f.finish();
  return law;
}

IntensityModel parse_intensity(Fields f) {
  const std::string kind = f.string("kind");
  IntensityModel model;
  if (kind == "constant") {
    model = ConstantIntensity{f.number("mu")};
  } else if (kind == "piecewise_constant") {
    model = PiecewiseConstantIntensity{f.numbers("breakpoints"), f.numbers("rates")};
  } else if (kind == "log_ou") {
    model = LogOrnsteinUhlenbeck{f.number("mean_reversion"), f.number("long_run_log_level"),
                                 f.number("vol"), f.number("initial")};
  } else {
    throw ConfigError("must be one of constant, piecewise_constant, log_ou", f.field("kind"));
  }
  f.finish();
  return model;
}

DelayLaw parse_delay(Fields f) {
  DelayLaw law;
  law.alpha0 = f.number("alpha0");
  if (f.has("density")) {
    Fields d = f.object("density");
    const std::string kind = d.string("kind");
    if (kind == "none") {
      law.density = NoDelayDensity{};
    } else if (kind == "exponential") {
      law.density = ExponentialDelay{d.number("rate")};
    } else if (kind == "gamma") {
      law.density = GammaDelay{d.number("shape"), d.number("rate")};
    } else {
      throw ConfigError("must be one of none, exponential, gamma", d.field("kind"));
    }
    d.finish();
  }
  f.finish();
  return law;
}

MarketModel parse_market(Fields f) {
  const std::string kind = f.string("kind");
  MarketModel model;
  if (kind == "deterministic") {
    model = DeterministicDeflator{f.number("initial", 1.0), f.number("rate", 0.0)};
  } else if (kind == "martingale") {
    model = MartingaleDeflator{f.number("initial", 1.0), f.number("vol"),
                               f.number("correlation", 0.0)};
  } else {
    throw ConfigError("must be one of deterministic, martingale", f.field("kind"));
  }
  f.finish();
  return model;
}

TimeGrid parse_grid(Fields f) {
  const double t0 = f.number("t0", 0.0);
  const double t_end = f.number("t_end");
  double step = kDefaultStep;
  if (f.has("step") && f.has("steps_per_year")) {
    throw ConfigError("give either step or steps_per_year, not both", f.field("step"));
  }
  if (f.has("step")) step = f.number("step");
  if (f.has("steps_per_year")) {
    const auto per_year = f.unsigned_integer("steps_per_year");
    if (per_year == 0) throw ConfigError("must be >= 1", f.field("steps_per_year"));
    step = 1.0 / static_cast<double>(per_year);
  }
  f.finish();
  return TimeGrid(t0, t_end, step);
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  std::ostringstream out;
  out << "line " << line << ", column " << column;
  return out.str();
}

}  // namespace

void Scenario::validate() const {
  claimsim::validate(intensity);
  delay.validate();
  claimsim::validate(first_mark, "first_mark");
  development.validate();
  claimsim::validate(market);
  if (policies == 0) throw ConfigError("must be >= 1", "portfolio.n");
  if (!(horizon > grid.t0()) || horizon > grid.t_end() + 1e-12) {
    throw ConfigError("must lie in (grid.t0, grid.t_end]", "valuation.T");
  }
  if (!(t >= grid.t0()) || t > horizon) {
    throw ConfigError("must lie in [grid.t0, valuation.T]", "valuation.t");
  }
  if (t > grid.t0() && !reported_count) {
    throw ConfigError("required when valuation.t is after the grid start",
                      "valuation.reported_count");
  }
  if (reported_count && *reported_count > policies) {
    throw ConfigError("must not exceed portfolio.n", "valuation.reported_count");
  }
  if (mc.paths < kMinPaths) throw ConfigError("must be >= 100", "mc.paths");
  if (mc.outer_paths < 2) throw ConfigError("must be >= 2", "mc.outer_paths");
}

Scenario parse_scenario(const nlohmann::json& config) {
  Fields root(config, "");
  const auto version = root.unsigned_integer("schema_version");
  if (version != kSchemaVersion) {
    throw ConfigError("unsupported schema version (expected 1)", "schema_version");
  }
  const auto seed = root.unsigned_integer("seed");
  TimeGrid grid = parse_grid(root.object("grid"));
  IntensityModel intensity = parse_intensity(root.object("intensity"));
  DelayLaw delay = parse_delay(root.object("delay"));
  MarkLaw first_mark = parse_mark(root.object("first_mark"));

  DevelopmentLaw development;
  {
    Fields f = root.object("development");
    development.lambda = f.number("lambda");
    development.marks = f.has("mark") ? parse_mark(f.object("mark")) : MarkLaw{DeterministicMark{1.0}};
    f.finish();
  }
  MarketModel market = parse_market(root.object("market"));

  std::size_t policies;
  {
    Fields f = root.object("portfolio");
    policies = f.unsigned_integer("n");
    f.finish();
  }
  double t, horizon;
  std::optional<std::size_t> reported;
  {
    Fields f = root.object("valuation");
    t = f.number("t", grid.t0());
    horizon = f.number("T");
    if (f.has("reported_count")) reported = f.unsigned_integer("reported_count");
    f.finish();
  }
  McSettings mc;
  if (root.has("mc")) {
    Fields f = root.object("mc");
    mc.paths = f.unsigned_integer("paths", mc.paths);
    mc.antithetic = f.boolean("antithetic", mc.antithetic);
    mc.outer_paths = f.unsigned_integer("outer_paths", mc.outer_paths);
    f.finish();
  }
  OutputSettings output;
  if (root.has("output")) {
    Fields f = root.object("output");
    output.report = f.string("report", output.report);
    output.curve = f.string("curve", output.curve);
    f.finish();
  }
  root.finish();

  Scenario s{seed,   std::move(grid), std::move(intensity), delay, first_mark, development,
             market, policies,        t,                    horizon, reported, mc, output};
  s.validate();
  return s;
}

std::string config_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

LoadedScenario load_scenario_text(std::string_view text) {
  json config;
  try {
    config = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("invalid JSON at " + line_column(text, e.byte > 0 ? e.byte - 1 : 0) + ": " +
                      e.what());
  }
  return {parse_scenario(config), config_hash(text)};
}

LoadedScenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario_text(buffer.str());
}

std::uint64_t reference_seed(const Scenario& s) noexcept {
  return derive_seed(s.seed, 0, Purpose::kOuterIntensity);
}

PortfolioState valuation_state(const Scenario& s) {
  return PortfolioState::counts(s.t, s.policies, s.reported_count.value_or(0));
}

McConfig make_mc_config(const Scenario& s, unsigned threads) {
  McConfig c{.paths = s.mc.paths,
             .seed = s.seed,
             .t = s.t,
             .horizon = s.horizon,
             .grid = s.grid,
             .intensity = s.intensity,
             .delay = s.delay,
             .first_mark = s.first_mark,
             .development = s.development,
             .market = s.market,
             .policies = s.policies,
             .conditioning = Unconditional{},
             .antithetic = s.mc.antithetic,
             .threads = threads};
  if (s.t > s.grid.t0()) c.conditioning = ConditionOnReportedCount{s.reported_count.value_or(0)};
  return c;
}

ReserveInputs make_reserve_inputs(const Scenario& s, unsigned threads,
                                  const QuadratureOptions& quadrature) {
  const std::uint64_t ref = reference_seed(s);
  return ReserveInputs{.intensity_model = s.intensity,
                       .intensity = simulate_intensity_path(s.intensity, s.grid, ref),
                       .market_model = s.market,
                       .market = simulate_market(s.market, s.grid, ref),
                       .delay = s.delay,
                       .first_mark = s.first_mark,
                       .development = s.development,
                       .outer_paths = s.mc.outer_paths,
                       .seed = derive_seed(s.seed, 1, Purpose::kOuterIntensity),
                       .threads = threads,
                       .quadrature = quadrature};
}

}  // namespace claimsim
