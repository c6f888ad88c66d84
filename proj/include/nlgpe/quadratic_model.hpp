#pragma once

#include <string>
#include <vector>

#include "nlgpe/coefficient_provider.hpp"
#include "nlgpe/types.hpp"

namespace nlgpe {

/// Model data for the quadratic Hamiltonian and the quadratic nonlocal kernel:
///   H(z,t)    = 1/2 <z, Hzz(t) z> + <Hz(t), z>
///   V(z,w,t)  = 1/2 <z, Wzz(t) z> + <z, Wzw(t) w> + 1/2 <w, Www(t) w>
/// All matrices are 2n x 2n in (p, x) block order. kappa_tilde = kappa * norm_squared
/// is the coupling that actually enters the reduced equations; the field norm is
/// conserved, so it is fixed by the initial data.
struct QuadraticModel {
  int n = 1;
  double hbar = 1.0;
  double kappa = 0.0;
  double norm_squared = 1.0;
  double t0 = 0.0, t1 = 0.0;  // scenario time window the providers must cover

  MatrixProvider Hzz = MatrixProvider::constant(Mat::Zero(2, 2));
  VectorProvider Hz = VectorProvider::constant(Vec::Zero(2));
  MatrixProvider Wzz = MatrixProvider::constant(Mat::Zero(2, 2));
  MatrixProvider Wzw = MatrixProvider::constant(Mat::Zero(2, 2));
  MatrixProvider Www = MatrixProvider::constant(Mat::Zero(2, 2));

  double kappa_tilde() const { return kappa * norm_squared; }

  /// Convenience: model with all coefficients zero-initialized to dimension n.
  static QuadraticModel empty(int n, double hbar = 1.0);
};

/// Structural checks. Returns human-readable diagnostics, one per violated
/// invariant, naming the invariant and the offending time sample; empty means valid.
std::vector<std::string> validate_model(const QuadraticModel& m);

/// M(t) = Hzz(t) + kappa_tilde * Wzz(t): generator of the associated linear
/// equation and of the linearized flow. Throws std::out_of_range outside the window.
Mat effective_linear_matrix(const QuadraticModel& m, double t);

/// Drive matrix of the first-moment equation: Hzz + kappa_tilde * (Wzz + Wzw).
Mat center_drive_matrix(const QuadraticModel& m, double t);

/// The scalar h(t) whose integral enters the action:
///   h = 1/2 <Z, [Hzz + kt*(Wzz + 2*Wzw + Www)] Z> + <Hz, Z> + kt/2 * tr(Www * Delta2).
double effective_hamiltonian(const QuadraticModel& m, double t, const Vec& Z, const Mat& Delta2);

}  // namespace nlgpe
