#include "nlgpe/linear_propagator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nlgpe {

namespace {

// Lift poly(u) over n variables to the phase-space symbol poly(z_x) over 2n
// variables (constant in the momentum slots).
WeylPolySymbol lift_position_poly(const MultiPoly& poly, int n) {
  CMat M = CMat::Zero(n, 2 * n);
  for (int i = 0; i < n; ++i) M(i, n + i) = 1.0;
  return {n, poly.substitute_affine(M, CVec::Zero(n), 2 * n)};
}

}  // namespace

GaussianPropagator::GaussianPropagator(HermiteGaussianState initial, std::vector<double> times,
                                       std::vector<Mat> Lambda)
    : initial_(std::move(initial)), times_(std::move(times)), Lambda_(std::move(Lambda)) {
  if (times_.empty() || Lambda_.size() != times_.size())
    throw std::invalid_argument("GaussianPropagator: times/Lambda size mismatch");
  initial_.validate();
  const int n = initial_.n;
  if (initial_.poly.degree() > 0) {
    has_poly_ = true;
    lifted_ = lift_position_poly(initial_.poly, n);
  }

  theta_.resize(times_.size());
  detR_.resize(times_.size());
  maslov_.resize(times_.size());
  for (std::size_t k = 0; k < times_.size(); ++k) {
    const Mat& L = Lambda_[k];
    CMat R = L.bottomLeftCorner(n, n).cast<cplx>() * initial_.Q +
             L.bottomRightCorner(n, n).cast<cplx>();
    detR_[k] = R.determinant();
    if (std::abs(detR_[k]) < 1e-12)
      throw std::runtime_error("GaussianPropagator: caustic (det R ~ 0); initial Q not normalizable?");
    if (k == 0) {
      theta_[0] = std::arg(detR_[0]);
    } else {
      double step = std::arg(detR_[k] / detR_[k - 1]);
      if (std::abs(step) >= std::numbers::pi / 2)
        throw std::runtime_error("GaussianPropagator: determinant phase step >= pi/2; refine the time grid");
      max_branch_step_ = std::max(max_branch_step_, std::abs(step));
      theta_[k] = theta_[k - 1] + step;
    }
    maslov_[k] = static_cast<int>(std::lround((theta_[k] - std::arg(detR_[k])) /
                                              (2.0 * std::numbers::pi)));
  }
}

HermiteGaussianState GaussianPropagator::at(std::size_t k) const {
  const int n = initial_.n;
  const Mat& L = Lambda_[k];
  CMat L1 = L.topLeftCorner(n, n).cast<cplx>();
  CMat L2 = L.topRightCorner(n, n).cast<cplx>();
  CMat L3 = L.bottomLeftCorner(n, n).cast<cplx>();
  CMat L4 = L.bottomRightCorner(n, n).cast<cplx>();

  CMat R = L3 * initial_.Q + L4;
  Eigen::PartialPivLU<CMat> lu(R);

  HermiteGaussianState out = initial_;
  CMat Qt = (L1 * initial_.Q + L2) * lu.inverse();
  out.Q = 0.5 * (Qt + Qt.transpose());  // symmetric up to round-off
  out.ell = lu.transpose().solve(initial_.ell);

  cplx sqrt_det_inv = std::exp(cplx(-0.5 * std::log(std::abs(detR_[k])), -0.5 * theta_[k]));
  cplx ell_phase = (initial_.ell.transpose() * (lu.solve(L3 * initial_.ell)))(0);
  out.amplitude = initial_.amplitude * sqrt_det_inv *
                  std::exp(-I_UNIT / (2.0 * initial_.hbar) * ell_phase);

  if (has_poly_) {
    HermiteGaussianState pure = out;
    pure.poly = MultiPoly::constant(n, 1.0);
    out = apply_symbol(transport_symbol(lifted_, L), pure);
  } else {
    out.poly = initial_.poly;  // constant prefactor rides along unchanged
  }
  return out;
}

std::vector<HermiteGaussianState> propagate_gaussian(const HermiteGaussianState& state0,
                                                     const QuadraticModel& m,
                                                     const std::vector<double>& times) {
  GaussianPropagator prop(state0, times, linearized_flow(m, times));
  std::vector<HermiteGaussianState> out;
  out.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) out.push_back(prop.at(k));
  return out;
}

std::vector<WeylPolySymbol> transport_symbol_sequence(const WeylPolySymbol& a,
                                                      const std::vector<Mat>& Lambda) {
  std::vector<WeylPolySymbol> out;
  out.reserve(Lambda.size());
  for (const Mat& L : Lambda) out.push_back(transport_symbol(a, L));
  return out;
}

WeylPolySymbol quadratic_symbol(const Mat& M) {
  const int d = static_cast<int>(M.rows());
  const int n = d / 2;
  MultiPoly poly(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (M(i, j) == 0.0) continue;
      std::vector<int> expo(d, 0);
      expo[i] += 1;
      expo[j] += 1;
      poly.set_coeff(expo, poly.coeff(expo) + 0.5 * M(i, j));
    }
  }
  return {n, poly};
}

double kommut_residual(const std::vector<WeylPolySymbol>& A, const QuadraticModel& m,
                       const std::vector<double>& times,
                       const std::vector<HermiteGaussianState>& probes) {
  if (A.size() != times.size() || times.size() < 3)
    throw std::invalid_argument("kommut_residual: need >= 3 knots with matching symbol history");
  double worst = 0.0;
  for (const auto& probe : probes) {
    probe.validate();
    for (std::size_t k = 1; k + 1 < times.size(); ++k) {
      double dt = times[k + 1] - times[k - 1];
      WeylPolySymbol H = quadratic_symbol(effective_linear_matrix(m, times[k]));

      HermiteGaussianState dA = apply_symbol(A[k + 1], probe);
      HermiteGaussianState dAm = apply_symbol(A[k - 1], probe);
      dA.poly = (dA.poly - dAm.poly) * (-I_UNIT * m.hbar / dt);

      HermiteGaussianState HA = apply_symbol(H, apply_symbol(A[k], probe));
      HermiteGaussianState AH = apply_symbol(A[k], apply_symbol(H, probe));

      HermiteGaussianState r = dA;
      r.poly = dA.poly + HA.poly - AH.poly;
      worst = std::max(worst, r.norm());
    }
  }
  return worst;
}

}  // namespace nlgpe
