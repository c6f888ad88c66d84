#include "nlgpe/hermite_gaussian.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace nlgpe {

HermiteGaussianState HermiteGaussianState::pure(int n, double hbar, CMat Q) {
  HermiteGaussianState s;
  s.n = n;
  s.hbar = hbar;
  s.Q = std::move(Q);
  s.ell = CVec::Zero(n);
  s.poly = MultiPoly::constant(n, 1.0);
  s.validate();
  return s;
}

HermiteGaussianState HermiteGaussianState::pure_centered(int n, double hbar, CMat Q,
                                                         const PhasePoint& center,
                                                         cplx amplitude) {
  if (center.n != n) throw std::invalid_argument("pure_centered: center dimension mismatch");
  HermiteGaussianState s = pure(n, hbar, std::move(Q));
  s.amplitude = amplitude;
  // exp{(i/h)(1/2 <u-X, Q(u-X)> + <P, u-X>)} expanded about u = 0.
  Vec X = center.position(), P = center.momentum();
  CVec Xc = X.cast<cplx>();
  s.ell = P.cast<cplx>() - s.Q * Xc;
  s.amplitude *= std::exp(I_UNIT / hbar * (0.5 * (Xc.transpose() * (s.Q * Xc))(0) - P.dot(X)));
  return s;
}

void HermiteGaussianState::validate() const {
  if (n < 1) throw std::invalid_argument("HermiteGaussianState: n must be >= 1");
  if (!(hbar > 0)) throw std::invalid_argument("HermiteGaussianState: hbar must be positive");
  if (Q.rows() != n || Q.cols() != n || ell.size() != n || poly.nvars() != n)
    throw std::invalid_argument("HermiteGaussianState: shape mismatch");
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, Q.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("HermiteGaussianState: Q must be symmetric");
  Mat A = Q.imag();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (A + A.transpose()));
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("HermiteGaussianState: Im Q must be positive definite");
}

cplx HermiteGaussianState::evaluate(const Vec& u) const {
  CVec uc = u.cast<cplx>();
  // Explicit transposes: Eigen's dot() would conjugate the left factor.
  cplx quad = 0.5 * (uc.transpose() * (Q * uc))(0) + (ell.transpose() * uc)(0);
  return amplitude * poly.evaluate(uc) * std::exp(I_UNIT / hbar * quad);
}

cplx gaussian_sqrt_det_inv(const CMat& G) {
  // Symmetric elimination without pivoting: with Re G positive definite every
  // pivot has positive real part, and the principal square roots multiply to
  // the analytic continuation of det^{-1/2} from real matrices.
  CMat W = G;
  const int n = static_cast<int>(G.rows());
  cplx prod = 1.0;
  for (int k = 0; k < n; ++k) {
    cplx d = W(k, k);
    if (d.real() <= 0.0)
      throw std::runtime_error("gaussian_sqrt_det_inv: pivot with non-positive real part");
    prod *= std::sqrt(d);
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) W(i, j) -= W(i, k) * W(j, k) / d;
  }
  return 1.0 / prod;
}

namespace {

/// Shared closed-form machinery: writes <a| weight |b> as
///   conj(Na) Nb * Z0 * E[conj(pa) * weight * pb]
/// under the complex Gaussian measure determined by both exponents.
struct BracketKernel {
  cplx base;   // conj(Na) Nb (2 pi hbar)^{n/2} det(G)^{-1/2} exp(<g, G^{-1} g>/(2 hbar))
  CVec mean;   // -G^{-1} g
  CMat cov;    // hbar G^{-1}

  BracketKernel(const HermiteGaussianState& a, const HermiteGaussianState& b) {
    if (a.n != b.n || a.hbar != b.hbar)
      throw std::invalid_argument("hermite_bracket: states must share n and hbar");
    const double h = a.hbar;
    const int n = a.n;
    CMat G = -I_UNIT * (b.Q - a.Q.conjugate());
    CVec g = -I_UNIT * (b.ell - a.ell.conjugate());
    CMat Ginv = G.inverse();
    mean = -(Ginv * g);
    cov = h * Ginv;
    cplx expo = (g.transpose() * (Ginv * g))(0) / (2.0 * h);
    base = std::conj(a.amplitude) * b.amplitude *
           std::pow(2.0 * M_PI * h, 0.5 * n) * gaussian_sqrt_det_inv(G) * std::exp(expo);
  }
};

}  // namespace

cplx hermite_bracket(const HermiteGaussianState& a, const HermiteGaussianState& b,
                     const MultiPoly& weight) {
  BracketKernel k(a, b);
  MultiPoly integrand = a.poly.conjugated() * weight * b.poly;
  return k.base * integrand.gaussian_expectation(k.mean, k.cov);
}

cplx hermite_inner(const HermiteGaussianState& a, const HermiteGaussianState& b) {
  return hermite_bracket(a, b, MultiPoly::constant(a.n, 1.0));
}

double HermiteGaussianState::norm_squared() const {
  return std::abs(hermite_inner(*this, *this));
}

double HermiteGaussianState::norm() const { return std::sqrt(norm_squared()); }

HermiteGaussianState HermiteGaussianState::normalized() const {
  double nm = norm();
  if (nm == 0.0) throw std::runtime_error("cannot normalize a zero state");
  HermiteGaussianState s = *this;
  s.amplitude /= nm;
  return s;
}

double hermite_distance(const HermiteGaussianState& a, const HermiteGaussianState& b) {
  double d2 = a.norm_squared() + b.norm_squared() - 2.0 * hermite_inner(a, b).real();
  return std::sqrt(std::max(0.0, d2));
}

HermiteGaussianState& HermiteGaussianState::mul_by_position(int i) {
  poly = poly * MultiPoly::variable(n, i);
  return *this;
}

HermiteGaussianState& HermiteGaussianState::apply_momentum(int i) {
  // -i hbar d/du_i [poly e^{(i/h)(.)}] = [-i hbar dpoly/du_i + ((Q u)_i + ell_i) poly] e^{(i/h)(.)}
  MultiPoly linear = MultiPoly::constant(n, ell(i));
  for (int j = 0; j < n; ++j)
    if (Q(i, j) != 0.0) linear += MultiPoly::variable(n, j) * Q(i, j);
  poly = poly.derivative(i) * cplx(0.0, -hbar) + linear * poly;
  return *this;
}

HermiteGaussianState& HermiteGaussianState::shift_argument(const Vec& d) {
  if (d.size() != n) throw std::invalid_argument("shift_argument: size mismatch");
  CVec dc = d.cast<cplx>();
  // exponent at u+d: 1/2<u,Qu> + <Qd + ell, u> + (1/2<d,Qd> + <ell,d>)
  cplx extra = 0.5 * (dc.transpose() * (Q * dc))(0) + (ell.transpose() * dc)(0);
  amplitude *= std::exp(I_UNIT / hbar * extra);
  ell += Q * dc;
  CMat M = CMat::Identity(n, n);
  poly = poly.substitute_affine(M, dc, n);
  return *this;
}

HermiteGaussianState& HermiteGaussianState::add_momentum_phase(const Vec& b) {
  if (b.size() != n) throw std::invalid_argument("add_momentum_phase: size mismatch");
  ell += b.cast<cplx>();
  return *this;
}

HermiteGaussianState& HermiteGaussianState::mul_phase(cplx s) {
  amplitude *= std::exp(I_UNIT / hbar * s);
  return *this;
}

HermiteGaussianState& HermiteGaussianState::displace(const PhasePoint& mu) {
  if (mu.n != n) throw std::invalid_argument("displace: dimension mismatch");
  Vec mp = mu.momentum(), mx = mu.position();
  shift_argument(-mx);
  add_momentum_phase(mp);
  mul_phase(cplx(-0.5 * mp.dot(mx), 0.0));
  return *this;
}

HermiteGaussianState& HermiteGaussianState::to_frame(const PhasePoint& Z, double S) {
  Vec P = Z.momentum(), X = Z.position();
  shift_argument(X);
  add_momentum_phase(-P);
  mul_phase(cplx(-S, 0.0));
  return *this;
}

HermiteGaussianState& HermiteGaussianState::from_frame(const PhasePoint& Z, double S) {
  Vec P = Z.momentum(), X = Z.position();
  shift_argument(-X);
  add_momentum_phase(P);
  mul_phase(cplx(S - P.dot(X), 0.0));
  return *this;
}

}  // namespace nlgpe
