#include "nlgpe/quadratic_model.hpp"

#include <cmath>
#include <cstdio>

namespace nlgpe {

QuadraticModel QuadraticModel::empty(int n, double hbar) {
  if (n < 1) throw std::invalid_argument("QuadraticModel: n must be >= 1");
  QuadraticModel m;
  m.n = n;
  m.hbar = hbar;
  m.Hzz = MatrixProvider::constant(Mat::Zero(2 * n, 2 * n));
  m.Hz = VectorProvider::constant(Vec::Zero(2 * n));
  m.Wzz = MatrixProvider::constant(Mat::Zero(2 * n, 2 * n));
  m.Wzw = MatrixProvider::constant(Mat::Zero(2 * n, 2 * n));
  m.Www = MatrixProvider::constant(Mat::Zero(2 * n, 2 * n));
  return m;
}

namespace {

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

void check_symmetric(const MatrixProvider& p, const char* name, const QuadraticModel& m,
                     std::vector<std::string>& out) {
  // 33 probe times cover constant, profile and sampled kinds well enough;
  // sampled kinds are piecewise linear, so symmetry at probes between every
  // pair of adjacent probes implies symmetry everywhere up to knot density.
  const int probes = 33;
  for (int i = 0; i < probes; ++i) {
    double t = m.t0 + (m.t1 - m.t0) * i / (probes - 1);
    if (!p.covers(t, t)) continue;
    Mat v = p(t);
    double asym = (v - v.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, v.cwiseAbs().maxCoeff())) {
      out.push_back(std::string(name) + " not symmetric at t=" + fmt_time(t));
      return;
    }
  }
}

}  // namespace

std::vector<std::string> validate_model(const QuadraticModel& m) {
  std::vector<std::string> diags;
  if (m.n < 1) diags.push_back("dimension n must be >= 1");
  if (!(m.hbar > 0)) diags.push_back("hbar must be positive");
  if (!(m.norm_squared > 0)) diags.push_back("norm_squared must be positive");
  if (!(m.t1 >= m.t0)) diags.push_back("time window t1 must be >= t0");
  if (!diags.empty()) return diags;  // dimension checks below assume sane n

  const int d = 2 * m.n;
  struct { const char* name; int got; } dims[] = {
      {"Hzz", m.Hzz.rows()}, {"Wzz", m.Wzz.rows()}, {"Wzw", m.Wzw.rows()}, {"Www", m.Www.rows()}};
  for (auto& e : dims)
    if (e.got != d)
      diags.push_back(std::string(e.name) + " has dimension " + std::to_string(e.got) +
                      ", expected " + std::to_string(d));
  if (m.Hz.size() != d)
    diags.push_back("Hz has dimension " + std::to_string(m.Hz.size()) + ", expected " +
                    std::to_string(d));

  struct { const char* name; bool ok; } cover[] = {
      {"Hzz", m.Hzz.covers(m.t0, m.t1)}, {"Hz", m.Hz.covers(m.t0, m.t1)},
      {"Wzz", m.Wzz.covers(m.t0, m.t1)}, {"Wzw", m.Wzw.covers(m.t0, m.t1)},
      {"Www", m.Www.covers(m.t0, m.t1)}};
  for (auto& e : cover)
    if (!e.ok)
      diags.push_back(std::string(e.name) + " does not cover the time window [" +
                      fmt_time(m.t0) + ", " + fmt_time(m.t1) + "]");

  if (diags.empty()) {
    check_symmetric(m.Hzz, "Hzz", m, diags);
    check_symmetric(m.Wzz, "Wzz", m, diags);
    check_symmetric(m.Www, "Www", m, diags);
    // Wzw couples two different slots and need not be symmetric.
  }
  return diags;
}

Mat effective_linear_matrix(const QuadraticModel& m, double t) {
  if (t < m.t0 - 1e-12 || t > m.t1 + 1e-12)
    throw std::out_of_range("effective_linear_matrix: t outside the scenario window");
  return m.Hzz(t) + m.kappa_tilde() * m.Wzz(t);
}

Mat center_drive_matrix(const QuadraticModel& m, double t) {
  return m.Hzz(t) + m.kappa_tilde() * (m.Wzz(t) + m.Wzw(t));
}

double effective_hamiltonian(const QuadraticModel& m, double t, const Vec& Z, const Mat& Delta2) {
  const double kt = m.kappa_tilde();
  Mat Www_t = m.Www(t);
  Mat quad = m.Hzz(t) + kt * (m.Wzz(t) + 2.0 * m.Wzw(t) + Www_t);
  return 0.5 * Z.dot(quad * Z) + m.Hz(t).dot(Z) + 0.5 * kt * (Www_t * Delta2).trace();
}

}  // namespace nlgpe
