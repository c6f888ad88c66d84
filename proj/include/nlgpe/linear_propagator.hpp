#pragma once

#include <vector>

#include "nlgpe/ehrenfest_flow.hpp"
#include "nlgpe/hermite_gaussian.hpp"
#include "nlgpe/quadratic_model.hpp"
#include "nlgpe/weyl_symbol.hpp"

namespace nlgpe {

/// Exact propagation of the Gaussian-with-polynomial-prefactor class under the
/// quadratic generator 1/2 <z, M(t) z>, M = Hzz + kt*Wzz, expressed through the
/// linearized flow Lambda(t) = [[L1,L2],[L3,L4]]:
///   R(t)   = L3 Q0 + L4                     (never singular for Im Q0 > 0)
///   Q(t)   = (L1 Q0 + L2) R^{-1}
///   ell(t) = R^{-T} ell0
///   N(t)   = N0 det^{-1/2}(R) exp{-(i/2 hbar) <ell0, R^{-1} L3 ell0>}
/// with the square-root branch continued along the knot sequence (discrete
/// Maslov index). Polynomial prefactors ride along as position-only Weyl
/// symbols transported by the inverse flow and applied to the propagated pure
/// Gaussian; this is exact because Weyl quantization is metaplectically
/// covariant.
class GaussianPropagator {
 public:
  /// times[k] and Lambda[k] must correspond; Lambda[0] should be the identity
  /// so that at(0) reproduces the initial state. Throws std::runtime_error if
  /// det R falls below 1e-12 in modulus (caustic; unreachable for Im Q0 > 0)
  /// or if the determinant phase jumps by >= pi/2 between knots (branch
  /// tracking would be unreliable).
  GaussianPropagator(HermiteGaussianState initial, std::vector<double> times,
                     std::vector<Mat> Lambda);

  std::size_t size() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }
  const HermiteGaussianState& initial() const { return initial_; }

  HermiteGaussianState at(std::size_t k) const;
  int maslov_index(std::size_t k) const { return maslov_[k]; }
  double max_branch_step() const { return max_branch_step_; }

 private:
  HermiteGaussianState initial_;
  std::vector<double> times_;
  std::vector<Mat> Lambda_;
  std::vector<double> theta_;  // continuously unwrapped arg det R
  std::vector<cplx> detR_;
  std::vector<int> maslov_;
  double max_branch_step_ = 0.0;
  bool has_poly_ = false;
  WeylPolySymbol lifted_;  // prefactor lifted to a position-only phase-space symbol
};

/// Convenience wrapper: integrates the linearized flow for the model and
/// returns the state at every knot.
std::vector<HermiteGaussianState> propagate_gaussian(const HermiteGaussianState& state0,
                                                     const QuadraticModel& m,
                                                     const std::vector<double>& times);

/// Symbol history a(Lambda(t)^{-1} z) along a flow sequence.
std::vector<WeylPolySymbol> transport_symbol_sequence(const WeylPolySymbol& a,
                                                      const std::vector<Mat>& Lambda);

/// Commutation defect of a symbol history against L = -i hbar d/dt + Op[1/2 <z,Mz>]:
/// max over probes and interior knots of
///   || -i hbar (A_{k+1} - A_{k-1})/(2 dt) phi + [Op[H_k], Op[A_k]] phi ||.
/// The bracket is evaluated in closed form (all ingredients stay in the
/// Gaussian class); only the time derivative is discretized.
double kommut_residual(const std::vector<WeylPolySymbol>& A, const QuadraticModel& m,
                       const std::vector<double>& times,
                       const std::vector<HermiteGaussianState>& probes);

/// Weyl symbol 1/2 <z, M z> of the associated-equation generator at time t.
WeylPolySymbol quadratic_symbol(const Mat& M);

}  // namespace nlgpe
