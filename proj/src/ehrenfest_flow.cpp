#include "nlgpe/ehrenfest_flow.hpp"

#include <cmath>

namespace nlgpe {

std::vector<double> make_time_grid(double t0, double t1, double dt) {
  if (!(dt > 0)) throw std::invalid_argument("make_time_grid: dt must be positive");
  if (t1 < t0) throw std::invalid_argument("make_time_grid: t1 must be >= t0");
  double raw = (t1 - t0) / dt;
  long steps = std::lround(raw);
  if (steps < 1 || std::abs(raw - static_cast<double>(steps)) > 1e-9 * std::max(1.0, raw))
    throw std::invalid_argument("make_time_grid: (t1 - t0) must be an integer multiple of dt");
  std::vector<double> ts(static_cast<size_t>(steps) + 1);
  for (long k = 0; k <= steps; ++k) ts[static_cast<size_t>(k)] = t0 + static_cast<double>(k) * dt;
  ts.back() = t1;
  return ts;
}

namespace {

void check_grid(const std::vector<double>& times) {
  if (times.size() < 2) throw std::invalid_argument("time grid needs at least two knots");
  double dt = times[1] - times[0];
  if (!(dt > 0)) throw std::invalid_argument("time grid must increase");
  for (size_t k = 1; k < times.size(); ++k) {
    double h = times[k] - times[k - 1];
    if (std::abs(h - dt) > 1e-9 * std::max(1.0, dt))
      throw std::invalid_argument("time grid must be uniform");
  }
}

// Generic 4-stage Runge-Kutta step for any state with +, scalar *.
template <typename Y, typename Rhs>
Y rk4_step(const Rhs& f, double t, double h, const Y& y) {
  Y k1 = f(t, y);
  Y k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  Y k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  Y k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct BundleY {
  Vec Z;
  Mat D;
  Mat L;
  double S;
};
BundleY operator+(const BundleY& a, const BundleY& b) {
  return {a.Z + b.Z, a.D + b.D, a.L + b.L, a.S + b.S};
}
BundleY operator*(double s, const BundleY& y) { return {s * y.Z, s * y.D, s * y.L, s * y.S}; }

struct LambdaY {
  Vec lam;
  double S;
};
LambdaY operator+(const LambdaY& a, const LambdaY& b) { return {a.lam + b.lam, a.S + b.S}; }
LambdaY operator*(double s, const LambdaY& y) { return {s * y.lam, s * y.S}; }

}  // namespace

std::vector<Vec> evolve_center(const QuadraticModel& m, const Vec& Z0,
                               const std::vector<double>& times) {
  check_grid(times);
  if (Z0.size() != 2 * m.n) throw std::invalid_argument("evolve_center: Z0 size mismatch");
  const Mat J = symplectic_form(m.n);
  auto rhs = [&](double t, const Vec& Z) -> Vec {
    return J * (m.Hz(t) + center_drive_matrix(m, t) * Z);
  };
  std::vector<Vec> out;
  out.reserve(times.size());
  Vec Z = Z0;
  out.push_back(Z);
  for (size_t k = 1; k < times.size(); ++k) {
    Z = rk4_step(rhs, times[k - 1], times[k] - times[k - 1], Z);
    out.push_back(Z);
  }
  return out;
}

std::vector<Mat> evolve_delta2(const QuadraticModel& m, const Mat& Delta20,
                               const std::vector<double>& times) {
  check_grid(times);
  const Mat J = symplectic_form(m.n);
  auto rhs = [&](double t, const Mat& D) -> Mat {
    Mat M = effective_linear_matrix(m, t);
    return J * M * D - D * M * J;
  };
  std::vector<Mat> out;
  out.reserve(times.size());
  Mat D = 0.5 * (Delta20 + Delta20.transpose());
  out.push_back(D);
  for (size_t k = 1; k < times.size(); ++k) {
    D = rk4_step(rhs, times[k - 1], times[k] - times[k - 1], D);
    D = 0.5 * (D + D.transpose());  // RHS preserves symmetry; trim roundoff
    out.push_back(D);
  }
  return out;
}

std::vector<Mat> linearized_flow(const QuadraticModel& m, const std::vector<double>& times) {
  TrajectoryBundle b = evolve_bundle(m, Vec::Zero(2 * m.n), Mat::Zero(2 * m.n, 2 * m.n), times);
  return std::move(b.Lambda);
}

std::vector<double> action_integral(const QuadraticModel& m, const Vec& Z0, const Mat& Delta20,
                                    const std::vector<double>& times) {
  TrajectoryBundle b = evolve_bundle(m, Z0, Delta20, times);
  return std::move(b.S);
}

TrajectoryBundle evolve_bundle(const QuadraticModel& m, const Vec& Z0, const Mat& Delta20,
                               const std::vector<double>& times) {
  check_grid(times);
  const int n = m.n;
  if (Z0.size() != 2 * n || Delta20.rows() != 2 * n || Delta20.cols() != 2 * n)
    throw std::invalid_argument("evolve_bundle: initial data size mismatch");
  const Mat J = symplectic_form(n);

  auto rhs = [&](double t, const BundleY& y) -> BundleY {
    Mat M = effective_linear_matrix(m, t);
    Vec Zdot = J * (m.Hz(t) + center_drive_matrix(m, t) * y.Z);
    BundleY d;
    d.Z = Zdot;
    d.D = J * M * y.D - y.D * M * J;
    d.L = J * M * y.L;
    // <P, Xdot> - h(t): momentum block of Z against position block of Zdot.
    d.S = y.Z.head(n).dot(Zdot.tail(n)) - effective_hamiltonian(m, t, y.Z, y.D);
    return d;
  };

  TrajectoryBundle out;
  out.n = n;
  out.times = times;
  out.Z.reserve(times.size());
  out.Delta2.reserve(times.size());
  out.Lambda.reserve(times.size());
  out.S.reserve(times.size());

  BundleY y{Z0, 0.5 * (Delta20 + Delta20.transpose()), Mat::Identity(2 * n, 2 * n), 0.0};
  auto store = [&](const BundleY& v) {
    out.Z.push_back(v.Z);
    out.Delta2.push_back(v.D);
    out.Lambda.push_back(v.L);
    out.S.push_back(v.S);
  };
  store(y);

  for (size_t k = 1; k < times.size(); ++k) {
    y = rk4_step(rhs, times[k - 1], times[k] - times[k - 1], y);
    y.D = 0.5 * (y.D + y.D.transpose());
    Mat defect = y.L.transpose() * J * y.L - J;
    double drift = defect.cwiseAbs().maxCoeff();
    if (drift > 1e-10) {
      // One Newton step toward the symplectic constraint; the defect is
      // antisymmetric so this cancels it to second order.
      y.L = y.L * (Mat::Identity(2 * n, 2 * n) + 0.5 * J * defect);
      ++out.projection_count;
      defect = y.L.transpose() * J * y.L - J;
      drift = defect.cwiseAbs().maxCoeff();
    }
    out.max_symplectic_defect = std::max(out.max_symplectic_defect, drift);
    store(y);
  }
  return out;
}

TrajectoryBundle evolve_auxiliary_cauchy(const QuadraticModel& m, const Vec& ZA0,
                                         const Mat& Delta2A0, const std::vector<double>& times) {
  return evolve_bundle(m, ZA0, Delta2A0, times);
}

LambdaTrajectory lambda_flow(const QuadraticModel& m, const Vec& lambda0,
                             const std::vector<double>& times) {
  check_grid(times);
  const int n = m.n;
  if (lambda0.size() != 2 * n) throw std::invalid_argument("lambda_flow: lambda0 size mismatch");
  const Mat J = symplectic_form(n);
  auto rhs = [&](double t, const LambdaY& y) -> LambdaY {
    Mat M = effective_linear_matrix(m, t);
    Vec ld = J * (M * y.lam);
    double Sdot = y.lam.head(n).dot(ld.tail(n)) - 0.5 * y.lam.dot(M * y.lam);
    return {ld, Sdot};
  };
  LambdaTrajectory out;
  out.n = n;
  out.times = times;
  out.lambda.reserve(times.size());
  out.S_lambda.reserve(times.size());
  LambdaY y{lambda0, 0.0};
  out.lambda.push_back(y.lam);
  out.S_lambda.push_back(y.S);
  for (size_t k = 1; k < times.size(); ++k) {
    y = rk4_step(rhs, times[k - 1], times[k] - times[k - 1], y);
    out.lambda.push_back(y.lam);
    out.S_lambda.push_back(y.S);
  }
  return out;
}

}  // namespace nlgpe
