#pragma once

#include <vector>

#include "nlgpe/quadratic_model.hpp"
#include "nlgpe/types.hpp"

namespace nlgpe {

/// Uniform knot grid t_k = t0 + k dt. Throws when (t1 - t0) is not an integer
/// multiple of dt (within 1e-9 relative).
std::vector<double> make_time_grid(double t0, double t1, double dt);

/// Joint moment/flow history on a uniform time grid: first moments Z = (P, X),
/// symmetrized centered second moments Delta2, linearized flow Lambda with
/// d/dt Lambda = J M(t) Lambda, and the accumulated action phase
/// S = integral of <P, Xdot> - h(t). Everything advances in one RK4 pass so the
/// action sees the same Delta2 the moment system produces.
struct TrajectoryBundle {
  int n = 1;
  std::vector<double> times;
  std::vector<Vec> Z;
  std::vector<Mat> Delta2;
  std::vector<Mat> Lambda;
  std::vector<double> S;
  double max_symplectic_defect = 0.0;  // max over knots of ||Lambda^T J Lambda - J||_inf
  int projection_count = 0;            // symplectic renormalizations applied

  size_t size() const { return times.size(); }
};

/// First-moment flow alone: dZ/dt = J { Hz + [Hzz + kt (Wzz + Wzw)] Z }.
std::vector<Vec> evolve_center(const QuadraticModel& m, const Vec& Z0,
                               const std::vector<double>& times);

/// Second-moment flow alone: dD/dt = J M D - D M J, re-symmetrized each step.
std::vector<Mat> evolve_delta2(const QuadraticModel& m, const Mat& Delta20,
                               const std::vector<double>& times);

/// Linearized flow Lambda(t) with Lambda(t0) = I; drift beyond 1e-10 triggers a
/// one-step symplectic projection.
std::vector<Mat> linearized_flow(const QuadraticModel& m, const std::vector<double>& times);

/// Action phase along a precomputed center/second-moment history (trapezoid-free:
/// re-integrates the joint system and discards all but S).
std::vector<double> action_integral(const QuadraticModel& m, const Vec& Z0, const Mat& Delta20,
                                    const std::vector<double>& times);

TrajectoryBundle evolve_bundle(const QuadraticModel& m, const Vec& Z0, const Mat& Delta20,
                               const std::vector<double>& times);

/// Same flow launched from operator-branch initial data (ZA0, Delta2A0); the
/// linearized flow does not depend on the branch.
TrajectoryBundle evolve_auxiliary_cauchy(const QuadraticModel& m, const Vec& ZA0,
                                         const Mat& Delta2A0, const std::vector<double>& times);

/// Shift flow for recentering operator branches:
///   dlambda/dt = J M(t) lambda,
///   dS_lambda/dt = <lambda_p, dlambda_x/dt> - 1/2 <lambda, M(t) lambda>.
struct LambdaTrajectory {
  int n = 1;
  std::vector<double> times;
  std::vector<Vec> lambda;
  std::vector<double> S_lambda;
};

LambdaTrajectory lambda_flow(const QuadraticModel& m, const Vec& lambda0,
                             const std::vector<double>& times);

}  // namespace nlgpe
