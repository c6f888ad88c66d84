#include "nlgpe/reconstruction.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>

#include "nlgpe/moments.hpp"

namespace nlgpe {

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_vec(const Vec& v) {
  std::string out;
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt_g(v[i]);
  }
  return out;
}

}  // namespace

std::size_t SolutionAssembly::knot_near(double t) const {
  const auto& times = bundle.times;
  if (times.empty()) throw std::logic_error("SolutionAssembly: empty bundle");
  double dt = times.size() > 1 ? times[1] - times[0] : 1.0;
  auto k = static_cast<std::size_t>(
      std::clamp<long>(std::lround((t - times.front()) / dt), 0, static_cast<long>(times.size()) - 1));
  if (std::abs(times[k] - t) > 0.5 * dt + 1e-12)
    throw std::invalid_argument("SolutionAssembly: no knot near requested time");
  return k;
}

HermiteGaussianState SolutionAssembly::x_frame(std::size_t k) const {
  HermiteGaussianState s = u_frame(k);
  s.from_frame({model.n, bundle.Z.at(k)}, bundle.S.at(k));
  return s;
}

GridState SolutionAssembly::sample_x(std::size_t k, double x_min, double x_max, int points) const {
  return sample_to_grid(x_frame(k), x_min, x_max, points, bundle.times.at(k));
}

SolutionAssembly assemble_solution(const QuadraticModel& m, TrajectoryBundle bundle,
                                   std::function<HermiteGaussianState(std::size_t)> phi,
                                   std::string provenance) {
  if (!phi) throw std::invalid_argument("assemble_solution: empty state history");
  SolutionAssembly a;
  a.model = m;
  a.bundle = std::move(bundle);
  a.u_frame = std::move(phi);
  a.provenance = std::move(provenance);
  return a;
}

SolutionAssembly base_solution(const QuadraticModel& m, const HermiteGaussianState& gamma,
                               const std::vector<double>& times) {
  gamma.validate();
  if (std::abs(gamma.norm_squared() - m.norm_squared) > 1e-6)
    throw std::invalid_argument("base_solution: ||gamma||^2 inconsistent with model norm_squared");

  MomentSet mom = gaussian_moments(gamma);
  TrajectoryBundle bundle = evolve_bundle(m, mom.first, mom.second_centered, times);

  HermiteGaussianState phi0 = gamma;
  phi0.to_frame({m.n, mom.first}, 0.0);
  auto prop = std::make_shared<GaussianPropagator>(std::move(phi0), times, bundle.Lambda);
  return assemble_solution(
      m, std::move(bundle), [prop](std::size_t k) { return prop->at(k); }, "base");
}

double centering_check(const SolutionAssembly& assembly, std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("centering_check: zero stride");
  double worst = 0.0;
  for (std::size_t k = 0; k < assembly.size(); k += stride)
    worst = std::max(worst, gaussian_moments(assembly.u_frame(k)).first.cwiseAbs().maxCoeff());
  return worst;
}

SolutionAssembly symmetry_route1(const SolutionAssembly& base, const StateOperator& op) {
  const QuadraticModel& m = base.model;
  const int n = m.n;
  const Vec Z0 = base.bundle.Z.front();

  StateOperator op_u = op.conjugated_by_frame({n, Z0}, m.hbar);
  HermiteGaussianState phi0 = base.u_frame(0);
  double alpha = normalization_constant(op_u, phi0);

  HermiteGaussianState bar0 = op_u.apply(phi0);
  bar0.amplitude /= alpha;
  MomentSet mom0 = gaussian_moments(bar0);
  const Vec lambda0 = mom0.first;

  auto lam = std::make_shared<LambdaTrajectory>(lambda_flow(m, lambda0, base.bundle.times));
  TrajectoryBundle bundleA =
      evolve_auxiliary_cauchy(m, Z0 + lambda0, mom0.second_centered, base.bundle.times);

  // sigma(t) constant: + <lambda_p, lambda_u>(0) + <P(0), lambda_u(0)>
  const double sigma_const =
      lambda0.head(n).dot(lambda0.tail(n)) + Z0.head(n).dot(lambda0.tail(n));

  auto Lambdas = std::make_shared<std::vector<Mat>>(base.bundle.Lambda);
  auto base_phi = base.u_frame;
  auto u_frame = [n, op_u, alpha, lam, Lambdas, base_phi, sigma_const](std::size_t k) {
    HermiteGaussianState s = op_u.transported((*Lambdas)[k]).apply(base_phi(k));
    s.amplitude /= alpha;
    Vec lp = lam->lambda[k].head(n);
    Vec lu = lam->lambda[k].tail(n);
    double sigma = lam->S_lambda[k] - lp.dot(lu) + sigma_const;
    s.shift_argument(lu);
    s.add_momentum_phase(-lp);
    s.mul_phase(sigma);
    return s;
  };
  SolutionAssembly out =
      assemble_solution(m, std::move(bundleA), u_frame, "route1:" + base.provenance);
  out.notes.emplace_back("alpha", fmt_g(alpha));
  out.notes.emplace_back("lambda0", fmt_vec(lambda0));
  return out;
}

StateOperator route2_conjugated_operator(const StateOperator& op_x, double alpha, const Vec& Z0,
                                         const Vec& ZA0, double hbar) {
  const int n = op_x.n;
  StateOperator op_u = op_x.conjugated_by_frame({n, Z0}, hbar);

  // Phases from T_A^{-1} (.) T with both actions started at S = 0:
  //   e^{(i/hbar)[ 1/2<P_A0,X_A0> - 1/2<P0,X0> + 1/2<Z_A0, J Z0> ]} D(-lambda0) op_u.
  double phase = 0.5 * ZA0.head(n).dot(ZA0.tail(n)) - 0.5 * Z0.head(n).dot(Z0.tail(n)) +
                 0.5 * ZA0.dot(symplectic_form(n) * Z0);
  op_u.scalar *= std::exp(I_UNIT / hbar * phase) / alpha;

  PhasePoint shift{n, -(ZA0 - Z0)};
  if (op_u.displacement) {
    // D(c) D(mu) = e^{-(i/2 hbar) <c, J mu>} D(c + mu)
    double cocycle = -0.5 * shift.z.dot(symplectic_form(n) * op_u.displacement->z);
    op_u.scalar *= std::exp(I_UNIT / hbar * cocycle);
    op_u.displacement->z += shift.z;
  } else {
    op_u.displacement = shift;
  }
  return op_u;
}

SolutionAssembly symmetry_route2(const SolutionAssembly& base, const StateOperator& op) {
  const QuadraticModel& m = base.model;
  const Vec Z0 = base.bundle.Z.front();

  HermiteGaussianState gamma = base.x_frame(0);
  double alpha = normalization_constant(op, gamma);
  HermiteGaussianState gammaA = op.apply(gamma);
  gammaA.amplitude /= alpha;

  MomentSet momA = gaussian_moments(gammaA);
  TrajectoryBundle bundleA =
      evolve_auxiliary_cauchy(m, momA.first, momA.second_centered, base.bundle.times);

  StateOperator bar = route2_conjugated_operator(op, alpha, Z0, momA.first, m.hbar);
  HermiteGaussianState phiA0 = bar.apply(base.u_frame(0));

  const Vec lambda0 = momA.first - Z0;
  auto prop =
      std::make_shared<GaussianPropagator>(std::move(phiA0), base.bundle.times, bundleA.Lambda);
  SolutionAssembly out = assemble_solution(
      m, std::move(bundleA), [prop](std::size_t k) { return prop->at(k); },
      "route2:" + base.provenance);
  out.notes.emplace_back("alpha", fmt_g(alpha));
  out.notes.emplace_back("lambda0", fmt_vec(lambda0));
  return out;
}

std::vector<MomentReportRow> norm_and_moment_report(const SolutionAssembly& assembly,
                                                    std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("norm_and_moment_report: zero stride");
  std::vector<MomentReportRow> rows;
  for (std::size_t k = 0; k < assembly.size(); k += stride) {
    HermiteGaussianState u = assembly.u_frame(k);
    MomentSet mu = gaussian_moments(u);

    MomentReportRow row;
    row.t = assembly.time_at(k);
    row.norm = u.norm();
    // Psi differs from the u-frame state by a displacement, so its moments are
    // the shifted u-frame moments; no second evaluation needed.
    row.first = mu.first + assembly.bundle.Z[k];
    row.first_defect = (row.first - assembly.bundle.Z[k]).cwiseAbs().maxCoeff();
    row.second_defect =
        (mu.second_centered - assembly.bundle.Delta2[k]).cwiseAbs().maxCoeff();
    row.centering = mu.first.cwiseAbs().maxCoeff();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nlgpe
