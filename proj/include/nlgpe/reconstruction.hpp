#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nlgpe/ehrenfest_flow.hpp"
#include "nlgpe/grid_state.hpp"
#include "nlgpe/hermite_gaussian.hpp"
#include "nlgpe/linear_propagator.hpp"
#include "nlgpe/quadratic_model.hpp"
#include "nlgpe/weyl_symbol.hpp"

namespace nlgpe {

/// A solution of the nonlinear equation in factored form: a moment/action
/// bundle (Z, Delta2, Lambda, S) plus the centered u-frame linear solution.
/// The physical field is Psi(x,t) = e^{(i/hbar)[S + <P, x-X>]} Phi(x - X, t),
/// reconstructed on demand through x_frame / sample_x.
struct SolutionAssembly {
  QuadraticModel model;
  TrajectoryBundle bundle;
  std::function<HermiteGaussianState(std::size_t)> u_frame;  // Phi at knot k
  std::string provenance;
  /// Derived quantities a construction wants to surface (alpha, lambda0, ...).
  std::vector<std::pair<std::string, std::string>> notes;

  std::size_t size() const { return bundle.size(); }
  double time_at(std::size_t k) const { return bundle.times.at(k); }
  /// Nearest knot to t; throws if no knot lies within half a step.
  std::size_t knot_near(double t) const;

  HermiteGaussianState x_frame(std::size_t k) const;
  GridState sample_x(std::size_t k, double x_min, double x_max, int points) const;
};

/// Generic pairing of a u-frame state history with a bundle.
SolutionAssembly assemble_solution(const QuadraticModel& m, TrajectoryBundle bundle,
                                   std::function<HermiteGaussianState(std::size_t)> phi,
                                   std::string provenance);

/// Base branch from Cauchy data gamma (x-frame, approximately unit norm):
/// moments of gamma seed the bundle, Phi(0) = gamma moved to the u-frame,
/// Phi(t) by metaplectic propagation. Throws when ||gamma||^2 disagrees with
/// m.norm_squared by more than 1e-6 (the nonlinear coupling would be wrong).
SolutionAssembly base_solution(const QuadraticModel& m, const HermiteGaussianState& gamma,
                               const std::vector<double>& times);

/// Max over sampled knots of |first u-frame moment| (infinity norm); the
/// assembly contract is that this stays at integration-error level.
double centering_check(const SolutionAssembly& assembly, std::size_t stride = 1);

/// Operator branch via symbol transport + recentering: at each knot,
/// Phi_A = (1/alpha) U a_u U^dagger Phi, then the lambda-flow shift restores
/// centering:
///   Phi_A_centered(u,t) = e^{(i/hbar)[sigma(t) - <lambda_p, u>]} Phi_A(u + lambda_u, t),
///   sigma(t) = S_lambda(t) - <lambda_p, lambda_u>(t) + <lambda_p, lambda_u>(0) + <P(0), lambda_u(0)>.
/// sigma solves d(sigma)/dt = -<dlambda_p/dt, lambda_u> - 1/2 <lambda, M lambda>,
/// which is exactly what makes the recentered state solve the associated
/// linear equation again; the constant makes Psi_A(.,0) = a gamma / alpha.
SolutionAssembly symmetry_route1(const SolutionAssembly& base, const StateOperator& op);

/// Operator branch via transformed Cauchy data: gamma_A = a gamma / alpha,
/// A-branch moments, u-frame conjugated operator applied at t=0, then
/// metaplectic propagation of the transformed state.
SolutionAssembly symmetry_route2(const SolutionAssembly& base, const StateOperator& op);

/// The u-frame operator with D(-lambda0) and the frame phases folded in, so
/// that Phi_A(.,0) = op_bar(Phi(.,0)). Exposed for direct testing against the
/// state-side construction.
StateOperator route2_conjugated_operator(const StateOperator& op_x, double alpha,
                                         const Vec& Z0, const Vec& ZA0, double hbar);

struct MomentReportRow {
  double t = 0.0;
  double norm = 0.0;
  Vec first;              // moments of the assembled Psi
  double first_defect = 0.0;   // ||first - Z_branch||_inf
  double second_defect = 0.0;  // ||centered second - Delta2_branch||_inf
  double centering = 0.0;      // u-frame first-moment magnitude
};

std::vector<MomentReportRow> norm_and_moment_report(const SolutionAssembly& assembly,
                                                    std::size_t stride = 1);

}  // namespace nlgpe
