#include "nlgpe/reference_solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlgpe/fft.hpp"

namespace nlgpe {

namespace {

// Cell centers for flat index c; n_dim <= 2.
inline void cell_position(const GridState& gs, std::size_t c, double* x) {
  if (gs.n_dim == 1) {
    x[0] = gs.axis(static_cast<int>(c));
  } else {
    x[0] = gs.axis(static_cast<int>(c / gs.points));
    x[1] = gs.axis(static_cast<int>(c % gs.points));
  }
}

std::vector<double> probe_times(const QuadraticModel& m) {
  std::vector<double> ts;
  const int samples = 33;
  for (int i = 0; i < samples; ++i)
    ts.push_back(m.t0 + (m.t1 - m.t0) * i / (samples - 1));
  return ts;
}

void check_w_blocks(const Mat& W, const char* name, double t, int n,
                    std::vector<std::string>& out) {
  Mat probe = W;
  probe.bottomRightCorner(n, n).setZero();
  if (probe.cwiseAbs().maxCoeff() > 1e-14)
    out.push_back(std::string(name) +
                  " has momentum-coupled entries at t=" + std::to_string(t) +
                  "; the grid solver supports position-only interaction kernels");
}

}  // namespace

PositionMoments position_moments(const GridState& psi) {
  const int n = psi.n_dim;
  PositionMoments pm;
  pm.raw_first = Vec::Zero(n);
  pm.raw_second = Mat::Zero(n, n);
  const double dV = psi.cell_volume();
  double x[2];
  for (std::size_t c = 0; c < psi.total(); ++c) {
    double w = std::norm(psi.values[c]) * dV;
    if (w == 0.0) continue;
    cell_position(psi, c, x);
    pm.norm_squared += w;
    for (int i = 0; i < n; ++i) {
      pm.raw_first(i) += w * x[i];
      for (int j = 0; j < n; ++j) pm.raw_second(i, j) += w * x[i] * x[j];
    }
  }
  return pm;
}

std::vector<std::string> nonlocal_restriction_diagnostics(const QuadraticModel& m) {
  std::vector<std::string> out;
  for (double t : probe_times(m)) {
    check_w_blocks(m.Wzz(t), "Wzz", t, m.n, out);
    check_w_blocks(m.Wzw(t), "Wzw", t, m.n, out);
    check_w_blocks(m.Www(t), "Www", t, m.n, out);
    if (!out.empty()) break;  // first offending time is enough
  }
  return out;
}

std::vector<std::string> grid_solver_restriction_diagnostics(const QuadraticModel& m) {
  std::vector<std::string> out = nonlocal_restriction_diagnostics(m);
  for (double t : probe_times(m)) {
    if (m.Hzz(t).topRightCorner(m.n, m.n).cwiseAbs().maxCoeff() > 1e-14) {
      out.push_back("Hzz has a p-x cross block at t=" + std::to_string(t) +
                    "; kinetic/potential splitting needs separable Hzz");
      break;
    }
  }
  return out;
}

EffectivePotentialSnapshot nonlocal_potential(const GridState& psi, const QuadraticModel& m,
                                              double t) {
  const int n = m.n;
  if (psi.n_dim != n) throw std::invalid_argument("nonlocal_potential: dimension mismatch");
  PositionMoments pm = position_moments(psi);
  EffectivePotentialSnapshot snap;
  snap.n = n;
  snap.quadratic = m.kappa * pm.norm_squared * m.Wzz(t).bottomRightCorner(n, n);
  snap.linear = m.kappa * m.Wzw(t).bottomRightCorner(n, n) * pm.raw_first;
  snap.scalar = 0.5 * m.kappa * (m.Www(t).bottomRightCorner(n, n) * pm.raw_second).trace();
  return snap;
}

EffectivePotentialSnapshot effective_potential(const GridState& psi, const QuadraticModel& m,
                                               double t) {
  EffectivePotentialSnapshot snap = nonlocal_potential(psi, m, t);
  snap.quadratic += m.Hzz(t).bottomRightCorner(m.n, m.n);
  snap.linear += m.Hz(t).tail(m.n);
  return snap;
}

std::vector<double> potential_values(const EffectivePotentialSnapshot& snap,
                                     const GridState& psi) {
  std::vector<double> v(psi.total());
  double x[2];
  for (std::size_t c = 0; c < psi.total(); ++c) {
    cell_position(psi, c, x);
    double q = 0.0, l = 0.0;
    for (int i = 0; i < snap.n; ++i) {
      l += snap.linear(i) * x[i];
      for (int j = 0; j < snap.n; ++j) q += x[i] * snap.quadratic(i, j) * x[j];
    }
    v[c] = 0.5 * q + l + snap.scalar;
  }
  return v;
}

// O(N^2) evaluation of the y-integral; agreement with the moment contraction
// is a unit-level identity (the kernel is quadratic in (x, y)).
std::vector<double> direct_quadrature_potential(const GridState& psi, const QuadraticModel& m,
                                                double t) {
  if (psi.n_dim != 1) throw std::invalid_argument("direct quadrature: 1D only");
  if (psi.points > 256) throw std::invalid_argument("direct quadrature: N <= 256 only");
  const double wzz = m.Wzz(t)(1, 1), wzw = m.Wzw(t)(1, 1), www = m.Www(t)(1, 1);
  const double hxx = m.Hzz(t)(1, 1), hx = m.Hz(t)(1);
  const double dV = psi.cell_volume();
  std::vector<double> v(psi.total());
  for (int i = 0; i < psi.points; ++i) {
    double x = psi.axis(i);
    double acc = 0.0;
    for (int j = 0; j < psi.points; ++j) {
      double y = psi.axis(j);
      acc += std::norm(psi.values[j]) *
             (0.5 * wzz * x * x + wzw * x * y + 0.5 * www * y * y);
    }
    v[i] = m.kappa * acc * dV + 0.5 * hxx * x * x + hx * x;
  }
  return v;
}

namespace {

struct KineticCache {
  bool valid = false;
  double dt = 0.0;
  Mat App;
  Vec bp;
  std::vector<cplx> mul;
};

}  // namespace

SplitStepResult split_step_evolve(const GridState& gamma, const QuadraticModel& m,
                                  const std::vector<double>& times,
                                  const SplitStepOptions& opt) {
  validate_grid(gamma);
  if (gamma.n_dim != m.n) throw std::invalid_argument("split_step_evolve: dimension mismatch");
  if (auto bad = grid_solver_restriction_diagnostics(m); !bad.empty())
    throw std::invalid_argument("split_step_evolve: " + bad.front());
  if (times.empty()) throw std::invalid_argument("split_step_evolve: empty time grid");
  if (opt.snapshot_stride < 1) throw std::invalid_argument("split_step_evolve: bad stride");
  if (opt.nonlocal == NonlocalEval::DirectQuadrature && (gamma.n_dim != 1 || gamma.points > 256))
    throw std::invalid_argument("split_step_evolve: direct quadrature is 1D, N <= 256");

  const double hbar = m.hbar;
  GridState state = gamma;
  state.t = times.front();
  const double norm0 = state.norm();

  SplitStepResult result;
  auto store = [&](const GridState& s) {
    result.times.push_back(s.t);
    result.states.push_back(s);
  };
  store(state);

  auto potential = [&](const GridState& s, double t) {
    if (opt.nonlocal == NonlocalEval::DirectQuadrature)
      return direct_quadrature_potential(s, m, t);
    return potential_values(effective_potential(s, m, t), s);
  };
  auto half_kick = [&](double t, double dt) {
    std::vector<double> v = potential(state, t);
    double vmax = 0.0;
    for (double w : v) vmax = std::max(vmax, std::abs(w));
    if (vmax * dt / hbar >= std::numbers::pi / 4)
      throw std::runtime_error("split_step_evolve: dt too large for the potential scale");
    for (std::size_t c = 0; c < state.total(); ++c)
      state.values[c] *= std::polar(1.0, -0.5 * dt * v[c] / hbar);
  };

  Fft fft(state.n_dim, state.points);
  std::vector<double> paxis = momentum_axis(state);
  KineticCache cache;

  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double t = times[k];
    const double dt = times[k + 1] - t;
    if (dt <= 0) throw std::invalid_argument("split_step_evolve: non-increasing times");

    half_kick(t, dt);

    const double tm = t + 0.5 * dt;
    Mat App = m.Hzz(tm).topLeftCorner(m.n, m.n);
    Vec bp = m.Hz(tm).head(m.n);
    if (!cache.valid || cache.dt != dt || cache.App != App || cache.bp != bp) {
      cache = {true, dt, App, bp, std::vector<cplx>(state.total())};
      double p[2];
      for (std::size_t c = 0; c < state.total(); ++c) {
        if (state.n_dim == 1) {
          p[0] = paxis[c];
        } else {
          p[0] = paxis[c / state.points];
          p[1] = paxis[c % state.points];
        }
        double kin = 0.0;
        for (int i = 0; i < m.n; ++i) {
          kin += bp(i) * p[i];
          for (int j = 0; j < m.n; ++j) kin += 0.5 * p[i] * App(i, j) * p[j];
        }
        cache.mul[c] = std::polar(1.0, -dt * kin / hbar);
      }
    }
    fft.forward(state.values);
    for (std::size_t c = 0; c < state.total(); ++c) state.values[c] *= cache.mul[c];
    fft.inverse(state.values);

    half_kick(t + dt, dt);
    state.t = times[k + 1];

    result.max_norm_drift = std::max(result.max_norm_drift, std::abs(state.norm() / norm0 - 1.0));
    result.max_tail_fraction = std::max(result.max_tail_fraction, state.boundary_tail_fraction());
    if ((k + 1) % static_cast<std::size_t>(opt.snapshot_stride) == 0 || k + 2 == times.size())
      store(state);
  }
  return result;
}

GridState apply_hamiltonian(const GridState& psi, const Mat& Hzz, const Vec& Hz) {
  validate_grid(psi);
  const int n = psi.n_dim;
  if (Hzz.rows() != 2 * n || Hz.size() != 2 * n)
    throw std::invalid_argument("apply_hamiltonian: coefficient shape mismatch");
  const Mat App = Hzz.topLeftCorner(n, n);
  const Mat Axx = Hzz.bottomRightCorner(n, n);
  const Mat C = Hzz.topRightCorner(n, n);  // <p, C x> cross symbol
  const Vec bp = Hz.head(n), bx = Hz.tail(n);

  Fft fft(n, psi.points);
  std::vector<double> paxis = momentum_axis(psi);
  auto momentum_at = [&](std::size_t c, double* p) {
    if (n == 1) {
      p[0] = paxis[c];
    } else {
      p[0] = paxis[c / psi.points];
      p[1] = paxis[c % psi.points];
    }
  };

  GridState out = psi;
  std::fill(out.values.begin(), out.values.end(), cplx{0.0, 0.0});

  std::vector<cplx> spec = psi.values;
  fft.forward(spec);

  // 1/2 <p, App p> + <bp, p>: Fourier multiplier.
  {
    std::vector<cplx> tmp = spec;
    double p[2];
    for (std::size_t c = 0; c < tmp.size(); ++c) {
      momentum_at(c, p);
      double kin = 0.0;
      for (int i = 0; i < n; ++i) {
        kin += bp(i) * p[i];
        for (int j = 0; j < n; ++j) kin += 0.5 * p[i] * App(i, j) * p[j];
      }
      tmp[c] *= kin;
    }
    fft.inverse(tmp);
    for (std::size_t c = 0; c < out.total(); ++c) out.values[c] += tmp[c];
  }

  // Weyl cross term <p, C x>: sum_i (C x)_i (p_i psi) - (i hbar / 2) tr(C) psi.
  if (C.cwiseAbs().maxCoeff() > 0.0) {
    double x[2];
    for (int i = 0; i < n; ++i) {
      if (C.row(i).cwiseAbs().maxCoeff() == 0.0) continue;
      std::vector<cplx> tmp = spec;
      double p[2];
      for (std::size_t c = 0; c < tmp.size(); ++c) {
        momentum_at(c, p);
        tmp[c] *= p[i];
      }
      fft.inverse(tmp);
      for (std::size_t c = 0; c < out.total(); ++c) {
        cell_position(psi, c, x);
        double cx = 0.0;
        for (int j = 0; j < n; ++j) cx += C(i, j) * x[j];
        out.values[c] += cx * tmp[c];
      }
    }
    const cplx corr = -I_UNIT * psi.hbar * 0.5 * C.trace();
    for (std::size_t c = 0; c < out.total(); ++c) out.values[c] += corr * psi.values[c];
  }

  // Position part.
  {
    double x[2];
    for (std::size_t c = 0; c < out.total(); ++c) {
      cell_position(psi, c, x);
      double pot = 0.0;
      for (int i = 0; i < n; ++i) {
        pot += bx(i) * x[i];
        for (int j = 0; j < n; ++j) pot += 0.5 * x[i] * Axx(i, j) * x[j];
      }
      out.values[c] += pot * psi.values[c];
    }
  }
  return out;
}

ResidualReport residual_norm(const std::vector<GridState>& snapshots, const QuadraticModel& m) {
  if (snapshots.size() < 3)
    throw std::invalid_argument("residual_norm: need at least three snapshots");
  if (auto bad = nonlocal_restriction_diagnostics(m); !bad.empty())
    throw std::invalid_argument("residual_norm: " + bad.front());
  const double hbar = m.hbar;

  ResidualReport report;
  for (std::size_t k = 1; k + 1 < snapshots.size(); ++k) {
    const GridState& prev = snapshots[k - 1];
    const GridState& cur = snapshots[k];
    const GridState& next = snapshots[k + 1];
    if (prev.total() != cur.total() || next.total() != cur.total())
      throw std::invalid_argument("residual_norm: snapshot grids differ");
    const double two_dt = next.t - prev.t;
    if (two_dt <= 0) throw std::invalid_argument("residual_norm: non-increasing snapshot times");

    GridState r = apply_hamiltonian(cur, m.Hzz(cur.t), m.Hz(cur.t));
    std::vector<double> vnl = potential_values(nonlocal_potential(cur, m, cur.t), cur);
    for (std::size_t c = 0; c < r.total(); ++c) {
      cplx dpsi = (next.values[c] - prev.values[c]) / two_dt;
      r.values[c] += -I_UNIT * hbar * dpsi + vnl[c] * cur.values[c];
    }
    report.times.push_back(cur.t);
    report.residual.push_back(r.norm());
    report.max = std::max(report.max, r.norm());
  }
  return report;
}

L2Comparison compare_l2(const GridState& a, const GridState& b) {
  if (a.n_dim != b.n_dim || a.points != b.points || a.x_min != b.x_min || a.x_max != b.x_max)
    throw std::invalid_argument("compare_l2: grid mismatch");
  const double dV = a.cell_volume();
  cplx inner{0.0, 0.0};
  double raw2 = 0.0;
  for (std::size_t c = 0; c < a.total(); ++c) {
    inner += std::conj(a.values[c]) * b.values[c] * dV;
    raw2 += std::norm(a.values[c] - b.values[c]) * dV;
  }
  L2Comparison cmp;
  cmp.raw = std::sqrt(raw2);
  cmp.best_phase = std::abs(inner) > 0.0 ? std::arg(inner) : 0.0;
  cplx rot = std::polar(1.0, -cmp.best_phase);
  double aligned2 = 0.0;
  for (std::size_t c = 0; c < a.total(); ++c)
    aligned2 += std::norm(a.values[c] - rot * b.values[c]) * dV;
  cmp.phase_aligned = std::sqrt(aligned2);
  return cmp;
}

}  // namespace nlgpe
