#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlgpe/hermite_gaussian.hpp"
#include "nlgpe/quadratic_model.hpp"
#include "nlgpe/weyl_symbol.hpp"

namespace nlgpe {

struct TimeSpec {
  double t0 = 0.0, t1 = 1.0, dt = 1e-3;
  int snapshot_stride = 100;
};

struct GridSpec {
  double x_min = -10.0, x_max = 10.0;
  int points = 1024;
};

enum class SymmetryRoute { One, Two, Both };

struct SymmetrySpec {
  SymmetryRoute route = SymmetryRoute::Both;
  StateOperator op;
  int max_degree = 4;
};

/// Pass/fail thresholds used by the validate/symmetry runners.
struct ToleranceSpec {
  double l2 = 1e-4;           // analytic vs grid, raw (phase included)
  double first_rel = 1e-4;    // first-moment tracking, relative
  double second_rel = 1e-3;   // second-moment tracking, relative
  double residual = 1e-4;     // equation defect of sampled assemblies
  double cross_route = 1e-8;  // route1 vs route2
};

struct Scenario {
  std::string name = "scenario";
  QuadraticModel model;
  HermiteGaussianState initial;  // x-frame Cauchy data, scaled to model.norm_squared
  TimeSpec time;
  std::optional<GridSpec> grid;
  std::optional<SymmetrySpec> symmetry;
  ToleranceSpec tolerances;
};

/// Carries every diagnostic found, not just the first; messages are
/// "<json path>: <problem>" lines suitable for machine consumption.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

/// Parse + validate. All structural and semantic checks run before any
/// computation; throws ScenarioError listing every failure.
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path);

/// Set a numeric leaf addressed by a dotted path ("model.kappa", "time.dt")
/// in a scenario document; returns the patched text. Throws ScenarioError when
/// the path is missing or not numeric. Used by parameter sweeps.
std::string patch_scenario_number(const std::string& text, const std::string& dotted_path,
                                  double value);

}  // namespace nlgpe
