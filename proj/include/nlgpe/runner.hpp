#pragma once

#include <string>
#include <vector>

#include "nlgpe/scenario.hpp"

namespace nlgpe {

struct RunOptions {
  std::string out_dir = "out";
  bool quiet = false;
  // Re-derive the effective potential by direct O(N^2) quadrature on a coarse
  // grid and report the deviation from the moment contraction.
  bool oracle_mode = false;
};

// All runners write artifacts under opt.out_dir and return a process exit
// code: 0 on success, 3 when a scenario tolerance is violated. Scenario-level
// problems surface as ScenarioError (the CLI maps those to exit code 2).

/// Moment/action trajectories + assembled field snapshots for the base branch.
int run_evolve(const Scenario& sc, const RunOptions& opt);

/// Operator branch(es): route-1 and/or route-2 construction, cross-route
/// distance, and (when a grid is configured) the split-step cross check of
/// the assembled field and its equation residual.
int run_symmetry(const Scenario& sc, const RunOptions& opt);

/// Assembled base field vs. the independent split-step evolution, with
/// moment tracking and residual checks against the scenario tolerances.
int run_validate(const Scenario& sc, const RunOptions& opt);

/// Re-run the evolve pipeline over a list of values patched into one numeric
/// scenario field; per-value artifacts go to <out>/rows/<index>/ and the
/// headline metrics are aggregated into <out>/sweep.csv.
int run_sweep(const std::string& scenario_text, const std::string& axis,
              const std::vector<double>& values, const RunOptions& opt);

}  // namespace nlgpe
