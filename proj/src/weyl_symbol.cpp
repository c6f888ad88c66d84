#include "nlgpe/weyl_symbol.hpp"

#include <cmath>

namespace nlgpe {

WeylPolySymbol WeylPolySymbol::position(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("WeylPolySymbol::position: index");
  return {n, MultiPoly::variable(2 * n, n + i)};
}

WeylPolySymbol WeylPolySymbol::momentum(int n, int i) {
  if (i < 0 || i >= n) throw std::invalid_argument("WeylPolySymbol::momentum: index");
  return {n, MultiPoly::variable(2 * n, i)};
}

WeylPolySymbol WeylPolySymbol::constant(int n, cplx c) {
  return {n, MultiPoly::constant(2 * n, c)};
}

WeylPolySymbol transport_symbol(const WeylPolySymbol& a, const Mat& Lambda) {
  const int d = 2 * a.n;
  if (Lambda.rows() != d || Lambda.cols() != d)
    throw std::invalid_argument("transport_symbol: Lambda size mismatch");
  Mat J = symplectic_form(a.n);
  Mat Linv = -J * Lambda.transpose() * J;  // exact inverse for symplectic Lambda
  if ((Linv * Lambda - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("transport_symbol: Lambda is not symplectic");
  return {a.n, a.poly.substitute_affine(Linv.cast<cplx>(), CVec::Zero(d), d)};
}

namespace {

double binom(int a, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (a - k + i) / i;
  return r;
}

}  // namespace

HermiteGaussianState apply_symbol(const WeylPolySymbol& a, const HermiteGaussianState& state) {
  const int n = state.n;
  if (a.n != n) throw std::invalid_argument("apply_symbol: dimension mismatch");
  HermiteGaussianState out = state;
  out.poly = MultiPoly(n);  // zero
  out.amplitude = state.amplitude;

  for (const auto& [expo, coeff] : a.poly.terms()) {
    // expo = (alpha_1..alpha_n, beta_1..beta_n): p-powers then x-powers.
    // Expand the per-dimension symmetrization sums into ordered words and
    // accumulate each word applied to the state.
    std::vector<std::pair<double, HermiteGaussianState>> batch;
    HermiteGaussianState seed = state;
    batch.emplace_back(1.0, seed);
    for (int i = 0; i < n; ++i) {
      int alpha = expo[i], beta = expo[n + i];
      if (alpha == 0 && beta == 0) continue;
      std::vector<std::pair<double, HermiteGaussianState>> next;
      double scale = std::pow(0.5, alpha);
      for (auto& [w, s] : batch) {
        for (int k = 0; k <= alpha; ++k) {
          HermiteGaussianState v = s;
          for (int r = 0; r < alpha - k; ++r) v.apply_momentum(i);
          for (int r = 0; r < beta; ++r) v.mul_by_position(i);
          for (int r = 0; r < k; ++r) v.apply_momentum(i);
          next.emplace_back(w * scale * binom(alpha, k), std::move(v));
        }
      }
      batch = std::move(next);
    }
    for (auto& [w, s] : batch) {
      // All batch members share Q, ell and amplitude with the input state, so
      // summing the polynomial parts is exact.
      out.poly += s.poly * (coeff * w * (s.amplitude / out.amplitude));
    }
  }
  return out;
}

StateOperator StateOperator::displacement_op(const PhasePoint& mu) {
  StateOperator op;
  op.n = mu.n;
  op.displacement = mu;
  return op;
}

StateOperator StateOperator::symbol_op(WeylPolySymbol a) {
  StateOperator op;
  op.n = a.n;
  op.symbol = std::move(a);
  return op;
}

StateOperator StateOperator::identity(int n) {
  StateOperator op;
  op.n = n;
  return op;
}

HermiteGaussianState StateOperator::apply(const HermiteGaussianState& state) const {
  if (state.n != n) throw std::invalid_argument("StateOperator::apply: dimension mismatch");
  HermiteGaussianState s = symbol ? apply_symbol(*symbol, state) : state;
  if (displacement) s.displace(*displacement);
  s.amplitude *= scalar;
  return s;
}

StateOperator StateOperator::conjugated_by_frame(const PhasePoint& Z, double hbar) const {
  StateOperator op = *this;
  if (op.symbol) {
    CMat M = CMat::Identity(2 * n, 2 * n);
    op.symbol->poly = op.symbol->poly.substitute_affine(M, Z.z.cast<cplx>(), 2 * n);
  }
  if (op.displacement) {
    Mat J = symplectic_form(n);
    double phase = Z.z.dot(J * op.displacement->z);
    op.scalar *= std::exp(I_UNIT / hbar * phase);
  }
  return op;
}

StateOperator StateOperator::transported(const Mat& Lambda) const {
  StateOperator op = *this;
  if (op.symbol) *op.symbol = transport_symbol(*op.symbol, Lambda);
  if (op.displacement) op.displacement->z = Lambda * op.displacement->z;
  return op;
}

double normalization_constant(const StateOperator& op, const HermiteGaussianState& state) {
  double alpha = op.apply(state).norm();
  if (alpha <= 1e-12 * state.norm())
    throw std::runtime_error("normalization_constant: operator annihilates the initial state");
  return alpha;
}

}  // namespace nlgpe
