#pragma once

#include "nlgpe/polynomial.hpp"
#include "nlgpe/types.hpp"

namespace nlgpe {

/// Squeezed-Gaussian wave function with polynomial prefactor:
///   psi(u) = amplitude * poly(u) * exp{(i/hbar)(1/2 <u, Q u> + <ell, u>)}
/// Q is complex symmetric with Im Q positive definite (L2-normalizable).
/// A real phase-space center (P, X) is representable as ell = P - Q X with the
/// polynomial re-expanded; keeping the complex linear coefficient explicit keeps
/// the class closed under every operation used here (Weyl operators,
/// displacements, frame transforms, metaplectic propagation).
struct HermiteGaussianState {
  int n = 1;
  double hbar = 1.0;
  cplx amplitude{1.0, 0.0};
  CMat Q;
  CVec ell;
  MultiPoly poly;

  /// Centered pure Gaussian, unit amplitude (not unit norm).
  static HermiteGaussianState pure(int n, double hbar, CMat Q);
  /// Pure Gaussian carrying a real phase-space center (p, x):
  ///   psi(u) = amplitude * exp{(i/hbar)(1/2 <u-x, Q (u-x)> + <p, u-x>)}.
  static HermiteGaussianState pure_centered(int n, double hbar, CMat Q, const PhasePoint& center,
                                            cplx amplitude = 1.0);

  /// Throws std::invalid_argument when shapes disagree, Q is not symmetric, or
  /// Im Q is not positive definite.
  void validate() const;

  cplx evaluate(const Vec& u) const;
  double norm() const;
  double norm_squared() const;
  HermiteGaussianState normalized() const;

  // In-place elementary operations (each returns *this for chaining).
  HermiteGaussianState& mul_by_position(int i);          // u_i * psi
  HermiteGaussianState& apply_momentum(int i);           // -i hbar d/du_i
  HermiteGaussianState& shift_argument(const Vec& d);    // psi(u) -> psi(u + d)
  HermiteGaussianState& add_momentum_phase(const Vec& b);// exp{(i/hbar)<b,u>} * psi
  HermiteGaussianState& mul_phase(cplx s);               // exp{(i/hbar) s} * psi
  /// Phase-space displacement: (D(mu) psi)(u) = e^{(i/hbar)<mu_p, u - mu_x/2>} psi(u - mu_x).
  HermiteGaussianState& displace(const PhasePoint& mu);

  /// Remove a moving-frame dressing: psi(u) -> e^{-(i/hbar)(S + <P,u>)} psi(u + X).
  HermiteGaussianState& to_frame(const PhasePoint& Z, double S);
  /// Apply a moving-frame dressing: psi(x) -> e^{(i/hbar)(S + <P, x - X>)} psi(x - X).
  HermiteGaussianState& from_frame(const PhasePoint& Z, double S);
};

/// <a | weight(u) | b> in closed form (weight multiplies pointwise).
cplx hermite_bracket(const HermiteGaussianState& a, const HermiteGaussianState& b,
                     const MultiPoly& weight);
cplx hermite_inner(const HermiteGaussianState& a, const HermiteGaussianState& b);

/// L2 distance computed in closed form.
double hermite_distance(const HermiteGaussianState& a, const HermiteGaussianState& b);

/// det(G)^{-1/2} for complex symmetric G with positive definite real part, on
/// the branch given by analytic continuation from real G (sequential-pivot
/// principal square roots).
cplx gaussian_sqrt_det_inv(const CMat& G);

}  // namespace nlgpe
