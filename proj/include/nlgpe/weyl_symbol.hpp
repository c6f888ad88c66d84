#pragma once

#include <optional>

#include "nlgpe/hermite_gaussian.hpp"
#include "nlgpe/polynomial.hpp"
#include "nlgpe/types.hpp"

namespace nlgpe {

/// Polynomial phase-space symbol a(z), z = (p, x) with momentum variables
/// first. Quantization is Weyl (symmetric) ordering.
struct WeylPolySymbol {
  int n = 1;           // spatial dimension; the polynomial has 2n variables
  MultiPoly poly;      // over (p_1..p_n, x_1..x_n)

  static WeylPolySymbol zero(int n) { return {n, MultiPoly(2 * n)}; }
  static WeylPolySymbol position(int n, int i);   // a = x_i
  static WeylPolySymbol momentum(int n, int i);   // a = p_i
  static WeylPolySymbol constant(int n, cplx c);

  int degree() const { return poly.degree(); }
};

/// Pull the symbol back along the inverse classical flow: A(z, t) = a(Lambda^{-1} z).
/// Lambda must be symplectic; the inverse is computed exactly as -J Lambda^T J.
WeylPolySymbol transport_symbol(const WeylPolySymbol& a, const Mat& Lambda);

/// Apply the Weyl quantization of the symbol to a state. Mixed monomials are
/// ordered by the symmetrization formula
///   Op[p^a x^b] = 2^{-a} sum_k C(a,k) phat^k xhat^b phat^{a-k}
/// per conjugate pair (pairs with different indices commute).
HermiteGaussianState apply_symbol(const WeylPolySymbol& a, const HermiteGaussianState& state);

/// Operator of the form scalar * D(mu) * Op[a] acting on the Gaussian class;
/// the family is closed under frame conjugation and flow transport, which is
/// all the symmetry construction needs. Either factor may be absent.
struct StateOperator {
  int n = 1;
  cplx scalar{1.0, 0.0};
  std::optional<PhasePoint> displacement;
  std::optional<WeylPolySymbol> symbol;

  static StateOperator displacement_op(const PhasePoint& mu);
  static StateOperator symbol_op(WeylPolySymbol a);
  static StateOperator identity(int n);

  HermiteGaussianState apply(const HermiteGaussianState& state) const;

  /// Conjugation by the frame dressing T[Z]: T^dagger A T. Polynomial symbols
  /// shift their argument, a(z) -> a(z + Z); displacements pick up the phase
  /// exp{(i/hbar) <Z, J mu>}; the hbar enters on application.
  StateOperator conjugated_by_frame(const PhasePoint& Z, double hbar) const;

  /// Heisenberg transport along the flow: U A U^dagger. Polynomial symbols map
  /// to a(Lambda^{-1} z), displacements to D(Lambda mu).
  StateOperator transported(const Mat& Lambda) const;

  int degree() const { return symbol ? symbol->degree() : 0; }
};

/// Norm of the operator image, alpha = ||A phi||; throws std::runtime_error
/// when the operator annihilates the state (alpha below 1e-12 * ||phi||).
double normalization_constant(const StateOperator& op, const HermiteGaussianState& state);

}  // namespace nlgpe
