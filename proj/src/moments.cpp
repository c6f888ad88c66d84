#include "nlgpe/moments.hpp"

#include <cmath>

#include "nlgpe/fft.hpp"

namespace nlgpe {

namespace {

// Spatial coordinate of a flat index along axis d (d = 0 is the slow index).
inline double coord(const GridState& gs, size_t flat, int d) {
  if (gs.n_dim == 1) return gs.axis(static_cast<int>(flat));
  int i = static_cast<int>(flat) / gs.points;
  int j = static_cast<int>(flat) % gs.points;
  return gs.axis(d == 0 ? i : j);
}

inline double mom_coord(const std::vector<double>& paxis, const GridState& gs, size_t flat,
                        int d) {
  if (gs.n_dim == 1) return paxis[flat];
  int i = static_cast<int>(flat) / gs.points;
  int j = static_cast<int>(flat) % gs.points;
  return paxis[d == 0 ? i : j];
}

}  // namespace

MomentSet grid_moments(const GridState& gs) {
  validate_grid(gs);
  const int n = gs.n_dim;
  const double dvol = gs.cell_volume();
  MomentSet ms;
  ms.n = n;
  ms.first = Vec::Zero(2 * n);
  ms.second_centered = Mat::Zero(2 * n, 2 * n);

  double sigma = gs.norm_squared();
  if (sigma <= 0.0) throw std::invalid_argument("grid_moments: zero-norm field");
  ms.norm_squared = sigma;

  // Position block from |psi|^2.
  Vec xbar = Vec::Zero(n);
  for (size_t f = 0; f < gs.total(); ++f) {
    double w = std::norm(gs.values[f]) * dvol;
    for (int d = 0; d < n; ++d) xbar(d) += w * coord(gs, f, d);
  }
  xbar /= sigma;
  Mat dxx = Mat::Zero(n, n);
  for (size_t f = 0; f < gs.total(); ++f) {
    double w = std::norm(gs.values[f]) * dvol;
    for (int d = 0; d < n; ++d)
      for (int e = d; e < n; ++e)
        dxx(d, e) += w * (coord(gs, f, d) - xbar(d)) * (coord(gs, f, e) - xbar(e));
  }
  dxx = dxx.selfadjointView<Eigen::Upper>();
  dxx /= sigma;

  // Momentum block from the spectral density (Parseval: sum over modes of
  // |psi_hat|^2 weights, with p = hbar k).
  Fft fft(n, gs.points);
  std::vector<cplx> hat = gs.values;
  fft.forward(hat);
  std::vector<double> paxis = momentum_axis(gs);
  double wsum = 0.0;
  Vec pbar = Vec::Zero(n);
  for (size_t f = 0; f < hat.size(); ++f) {
    double w = std::norm(hat[f]);
    wsum += w;
    for (int d = 0; d < n; ++d) pbar(d) += w * mom_coord(paxis, gs, f, d);
  }
  pbar /= wsum;
  Mat dpp = Mat::Zero(n, n);
  for (size_t f = 0; f < hat.size(); ++f) {
    double w = std::norm(hat[f]);
    for (int d = 0; d < n; ++d)
      for (int e = d; e < n; ++e)
        dpp(d, e) += w * (mom_coord(paxis, gs, f, d) - pbar(d)) *
                     (mom_coord(paxis, gs, f, e) - pbar(e));
  }
  dpp = dpp.selfadjointView<Eigen::Upper>();
  dpp /= wsum;

  // Mixed block: Delta2[p_d, x_e] = Re <(x_e - xbar_e) psi | (p_d - pbar_d) psi>.
  Mat dpx = Mat::Zero(n, n);
  for (int d = 0; d < n; ++d) {
    std::vector<cplx> pd = hat;
    for (size_t f = 0; f < pd.size(); ++f) pd[f] *= mom_coord(paxis, gs, f, d);
    fft.inverse(pd);  // pd = p_hat_d psi in position space
    for (size_t f = 0; f < pd.size(); ++f) {
      cplx centered_p = pd[f] - pbar(d) * gs.values[f];
      for (int e = 0; e < n; ++e)
        dpx(d, e) += (std::conj(gs.values[f]) * (coord(gs, f, e) - xbar(e)) * centered_p).real() *
                     dvol;
    }
  }
  dpx /= sigma;

  ms.first.head(n) = pbar;
  ms.first.tail(n) = xbar;
  ms.second_centered.topLeftCorner(n, n) = dpp;
  ms.second_centered.bottomRightCorner(n, n) = dxx;
  ms.second_centered.topRightCorner(n, n) = dpx;
  ms.second_centered.bottomLeftCorner(n, n) = dpx.transpose();
  return ms;
}

PhasePoint first_moment(const GridState& gs) {
  MomentSet ms = grid_moments(gs);
  return PhasePoint(ms.n, ms.first);
}

Mat centered_second_moments(const GridState& gs) { return grid_moments(gs).second_centered; }

MomentSet gaussian_moments(const HermiteGaussianState& state) {
  state.validate();
  const int n = state.n;
  MomentSet ms;
  ms.n = n;
  ms.first = Vec::Zero(2 * n);
  ms.second_centered = Mat::Zero(2 * n, 2 * n);

  double sigma = state.norm_squared();
  if (sigma <= 0.0) throw std::invalid_argument("gaussian_moments: zero state");
  ms.norm_squared = sigma;

  std::vector<HermiteGaussianState> pstates;  // p_hat_d applied
  pstates.reserve(n);
  for (int d = 0; d < n; ++d) {
    HermiteGaussianState s = state;
    s.apply_momentum(d);
    pstates.push_back(std::move(s));
  }

  Vec xbar(n), pbar(n);
  for (int d = 0; d < n; ++d) {
    xbar(d) = hermite_bracket(state, state, MultiPoly::variable(n, d)).real() / sigma;
    pbar(d) = hermite_inner(state, pstates[d]).real() / sigma;
  }

  for (int d = 0; d < n; ++d)
    for (int e = d; e < n; ++e) {
      MultiPoly xx = MultiPoly::variable(n, d) * MultiPoly::variable(n, e);
      double mxx = hermite_bracket(state, state, xx).real() / sigma - xbar(d) * xbar(e);
      double mpp = hermite_inner(pstates[d], pstates[e]).real() / sigma - pbar(d) * pbar(e);
      ms.second_centered(n + d, n + e) = ms.second_centered(n + e, n + d) = mxx;
      ms.second_centered(d, e) = ms.second_centered(e, d) = mpp;
    }
  for (int d = 0; d < n; ++d)
    for (int e = 0; e < n; ++e) {
      double m = hermite_bracket(state, pstates[d], MultiPoly::variable(n, e)).real() / sigma -
                 pbar(d) * xbar(e);
      ms.second_centered(d, n + e) = m;
      ms.second_centered(n + e, d) = m;
    }

  ms.first.head(n) = pbar;
  ms.first.tail(n) = xbar;
  return ms;
}

}  // namespace nlgpe
