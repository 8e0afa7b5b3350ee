#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "mbd/darboux.hpp"

namespace mbd {

using Json = nlohmann::json;

/// Verification request: stencil step/order, which residual suites to run,
/// and the pass thresholds.  `inject_corruption` scales e_+ before the
/// checks, a self-test hook for the harness.
struct VerifySpec {
  double h = 1e-3;
  int order = 2;
  std::vector<std::string> checks = {"mb", "conservation"};
  std::map<std::string, double> tolerances;
  bool inject_corruption = false;
  double corruption_factor = 1.01;

  double tolerance(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
};

struct OutputSpec {
  bool include_bloch = false;
};

struct ScenarioConfig {
  SeedBackground seed;
  std::vector<DressingStep> steps;
  Grid2D grid;
  VerifySpec verify;
  OutputSpec output;
  Json reconcile;  // family-specific section, parsed by cmd_reconcile
  Json perturb;    // contour/convergence section, parsed by cmd_perturb
};

Complex parse_complex(const Json& j, const std::string& path);
DetuningModel parse_detuning(const Json& j, const std::string& path);
SeedBackground parse_seed(const Json& j, const DetuningModel& det,
                          const std::string& path);
Grid2D parse_grid(const Json& j, const std::string& path);

/// Validates the whole scenario; throws ConfigError naming the failing
/// field path.
ScenarioConfig parse_scenario(const Json& j);

}  // namespace mbd
