#pragma once

#include <string>
#include <vector>

#include "nlgpe/grid_state.hpp"
#include "nlgpe/quadratic_model.hpp"
#include "nlgpe/types.hpp"

namespace nlgpe {

/// Multiplicative potential extracted from the instantaneous field:
/// value at x is 1/2 <x, quadratic x> + <linear, x> + scalar.
struct EffectivePotentialSnapshot {
  int n = 1;
  Mat quadratic;
  Vec linear;
  double scalar = 0.0;
};

/// Raw (un-normalized) position moments of |psi|^2.
struct PositionMoments {
  double norm_squared = 0.0;
  Vec raw_first;
  Mat raw_second;
};
PositionMoments position_moments(const GridState& psi);

/// Empty when every W block except the position-position one vanishes on the
/// model window (the nonlocal term is then a pure multiplication operator).
std::vector<std::string> nonlocal_restriction_diagnostics(const QuadraticModel& m);

/// Adds the kinetic/potential separability requirement: no p-x cross blocks in
/// Hzz. The analytic pipeline has no such restriction; this gates the grid solver.
std::vector<std::string> grid_solver_restriction_diagnostics(const QuadraticModel& m);

/// W-driven part of the potential, exact from moments of the current field.
EffectivePotentialSnapshot nonlocal_potential(const GridState& psi, const QuadraticModel& m,
                                              double t);
/// nonlocal_potential plus the external quadratic potential (Hzz position
/// block and Hz position drive).
EffectivePotentialSnapshot effective_potential(const GridState& psi, const QuadraticModel& m,
                                               double t);

/// Potential sampled on the grid cells.
std::vector<double> potential_values(const EffectivePotentialSnapshot& snap, const GridState& psi);

/// O(N^2) evaluation of the interaction integral plus the bare potential,
/// cell by cell (1D, N <= 256). Agrees with the moment contraction to
/// round-off; kept as an independent spot check of the reduction.
std::vector<double> direct_quadrature_potential(const GridState& psi, const QuadraticModel& m,
                                                double t);

enum class NonlocalEval {
  Moments,           // contract the quadratic kernel against grid moments (exact)
  DirectQuadrature,  // O(N^2) double integral, 1D and N <= 256 only (spot check)
};

struct SplitStepOptions {
  int snapshot_stride = 1;  // store every stride-th knot (last knot always stored)
  NonlocalEval nonlocal = NonlocalEval::Moments;
};

struct SplitStepResult {
  std::vector<double> times;
  std::vector<GridState> states;
  double max_norm_drift = 0.0;     // max |norm/norm0 - 1|
  double max_tail_fraction = 0.0;  // max boundary mass fraction seen
};

/// Strang-split evolution V/2 - T - V/2 with the potential rebuilt from fresh
/// moments before each half-step (self-consistent) and the kinetic multiplier
/// taken at the step midpoint. Potential half-steps are exact: they leave
/// |psi| (and hence the moments feeding V) unchanged. No renormalization is
/// applied; norm drift is reported, not corrected.
SplitStepResult split_step_evolve(const GridState& gamma, const QuadraticModel& m,
                                  const std::vector<double>& times,
                                  const SplitStepOptions& opt = {});

/// Weyl-quantized quadratic Hamiltonian applied spectrally; supports p-x cross
/// blocks (x (Cx).p product ordering plus the -i hbar/2 tr C correction).
GridState apply_hamiltonian(const GridState& psi, const Mat& Hzz, const Vec& Hz);

struct ResidualReport {
  std::vector<double> times;     // interior knots
  std::vector<double> residual;  // L2 norm of the equation defect
  double max = 0.0;
};

/// Central-difference time derivative + spectral spatial operators + the
/// moment-contracted nonlocal term of the snapshot itself: reports
/// || -i hbar dPsi/dt + H Psi + kappa V(t, Psi) Psi ||_2 per interior knot.
ResidualReport residual_norm(const std::vector<GridState>& snapshots, const QuadraticModel& m);

struct L2Comparison {
  double raw = 0.0;            // || a - b ||
  double phase_aligned = 0.0;  // || a - e^{-i best_phase} b ||
  double best_phase = 0.0;     // arg <a, b>
};
L2Comparison compare_l2(const GridState& a, const GridState& b);

}  // namespace nlgpe
