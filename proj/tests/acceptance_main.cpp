// End-to-end acceptance checks for the solver suite. Each criterion prints a
// single [PASS]/[FAIL] line with the measured values and pinned tolerances;
// the exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <vector>

#include "nlgpe/linear_propagator.hpp"
#include "nlgpe/moments.hpp"
#include "nlgpe/reconstruction.hpp"
#include "nlgpe/reference_solver.hpp"

using namespace nlgpe;

namespace {

double now_s() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point t0 = clock::now();
  return std::chrono::duration<double>(clock::now() - t0).count();
}

struct Timer {
  double start = now_s();
  double elapsed() const { return now_s() - start; }
};

int g_failures = 0;

void report(int criterion, bool pass, const char* fmt_msg, ...) {
  if (!pass) ++g_failures;
  std::printf("[%s] criterion %d: ", pass ? "PASS" : "FAIL", criterion);
  va_list args;
  va_start(args, fmt_msg);
  std::vprintf(fmt_msg, args);
  va_end(args);
  std::printf("\n");
  std::fflush(stdout);
}

Mat xx_block() {
  Mat W = Mat::Zero(2, 2);
  W(1, 1) = 1.0;
  return W;
}

QuadraticModel make_model(const MatrixProvider& Hzz, double kappa, double t1) {
  QuadraticModel m = QuadraticModel::empty(1);
  m.Hzz = Hzz;
  m.kappa = kappa;
  m.t1 = t1;
  if (kappa != 0.0) {
    m.Wzz = MatrixProvider::constant(xx_block());
    m.Wzw = MatrixProvider::constant(xx_block());
    m.Www = MatrixProvider::constant(xx_block());
  }
  return m;
}

QuadraticModel coupled_trap(double kappa, double t1) {
  QuadraticModel m = make_model(MatrixProvider::constant(Mat::Identity(2, 2)), kappa, t1);
  m.Wzz = MatrixProvider::constant(xx_block());
  m.Wzw = MatrixProvider::constant(xx_block());
  m.Www = MatrixProvider::constant(xx_block());
  return m;
}

HermiteGaussianState ground(cplx q, double p0, double x0) {
  CMat Q(1, 1);
  Q << q;
  Vec z(2);
  z << p0, x0;
  return HermiteGaussianState::pure_centered(1, 1.0, Q, {1, z}).normalized();
}

double det_drift(const TrajectoryBundle& b) {
  double d0 = b.Delta2.front().determinant();
  double worst = 0.0;
  for (const Mat& D : b.Delta2) worst = std::max(worst, std::abs(D.determinant() / d0 - 1.0));
  return worst;
}

// --- criterion 1: long-horizon integrity of the reduced flow --------------

void criterion1() {
  struct Case {
    const char* name;
    MatrixProvider Hzz;
  };
  Mat free_pp = Mat::Zero(2, 2);
  free_pp(0, 0) = 1.0;
  std::vector<Case> cases = {
      {"free", MatrixProvider::constant(free_pp)},
      {"harmonic", MatrixProvider::constant(Mat::Identity(2, 2))},
      {"breathing", MatrixProvider::cosine_xx(1, 1.0, 0.1, 2.0, 1.0)},
  };
  auto times = make_time_grid(0.0, 10.0, 1e-3);
  Vec Z0(2);
  Z0 << 0.0, 1.0;
  Mat D0 = 0.5 * Mat::Identity(2, 2);

  double worst_sympl = 0.0, worst_det = 0.0, worst_time = 0.0;
  for (const Case& c : cases) {
    for (double kappa : {0.0, 0.3}) {
      QuadraticModel m = make_model(c.Hzz, kappa, 10.0);
      Timer t;
      TrajectoryBundle b = evolve_bundle(m, Z0, D0, times);
      worst_time = std::max(worst_time, t.elapsed());
      worst_sympl = std::max(worst_sympl, b.max_symplectic_defect);
      worst_det = std::max(worst_det, det_drift(b));
    }
  }
  bool pass = worst_sympl <= 1e-9 && worst_det <= 1e-8 && worst_time < 1.0;
  report(1, pass,
         "reduced flow over t in [0,10], 6 model/coupling combos: symplectic defect %.2e "
         "(tol 1e-9), det spread drift %.2e (tol 1e-8), slowest run %.2fs (limit 1s)",
         worst_sympl, worst_det, worst_time);
}

// --- criterion 2: closed-form moment/action references --------------------

void criterion2() {
  const double p0 = 0.8, x0 = -0.4, T = 2.7;
  auto times = make_time_grid(0.0, T, 1e-3);
  Vec Z0(2);
  Z0 << p0, x0;

  // free particle, ground width 1/2
  QuadraticModel mf = make_model(MatrixProvider::constant([] {
                                   Mat H = Mat::Zero(2, 2);
                                   H(0, 0) = 1.0;
                                   return H;
                                 }()),
                                 0.0, T);
  TrajectoryBundle bf = evolve_bundle(mf, Z0, 0.5 * Mat::Identity(2, 2), times);
  Vec Zf(2);
  Zf << p0, x0 + p0 * T;
  Mat Df(2, 2);
  Df << 0.5, 0.5 * T, 0.5 * T, 0.5 * (1.0 + T * T);
  double err_free = std::max({(bf.Z.back() - Zf).cwiseAbs().maxCoeff(),
                              (bf.Delta2.back() - Df).cwiseAbs().maxCoeff(),
                              std::abs(bf.S.back() - 0.5 * p0 * p0 * T)});

  // harmonic trap, squeezed width
  QuadraticModel mh = make_model(MatrixProvider::constant(Mat::Identity(2, 2)), 0.0, T);
  Mat D0(2, 2);
  D0 << 1.0, 0.0, 0.0, 0.25;  // Q0 = 2i
  TrajectoryBundle bh = evolve_bundle(mh, Z0, D0, times);
  Mat rot(2, 2);
  rot << std::cos(T), -std::sin(T), std::sin(T), std::cos(T);
  Vec Zh = rot * Z0;
  Mat Dh = rot * D0 * rot.transpose();
  double Sh = 0.5 * ((p0 * p0 - x0 * x0) * std::sin(2 * T) / 2.0 +
                     p0 * x0 * (std::cos(2 * T) - 1.0));
  double err_harm = std::max({(bh.Z.back() - Zh).cwiseAbs().maxCoeff(),
                              (bh.Delta2.back() - Dh).cwiseAbs().maxCoeff(),
                              std::abs(bh.S.back() - Sh)});

  double worst = std::max(err_free, err_harm);
  report(2, worst <= 1e-8,
         "closed-form check at t=%.1f: free max error %.2e, harmonic max error %.2e (tol 1e-8)",
         T, err_free, err_harm);
}

// --- criterion 3: grid solver tracks the reduced moment system ------------

void criterion3() {
  Timer t;
  QuadraticModel m = coupled_trap(0.3, 5.0);
  HermiteGaussianState gamma = ground(cplx(0, 1), 0.0, 1.0);
  auto times = make_time_grid(0.0, 5.0, 1e-3);
  TrajectoryBundle b = evolve_bundle(m, gaussian_moments(gamma).first,
                                     gaussian_moments(gamma).second_centered, times);

  GridState start = sample_to_grid(gamma, -12.0, 12.0, 2048, 0.0);
  SplitStepOptions opt;
  opt.snapshot_stride = 100;
  SplitStepResult grid = split_step_evolve(start, m, times, opt);

  double scaleZ = 1e-12, scaleD = 1e-12;
  for (const Vec& z : b.Z) scaleZ = std::max(scaleZ, z.cwiseAbs().maxCoeff());
  for (const Mat& D : b.Delta2) scaleD = std::max(scaleD, D.cwiseAbs().maxCoeff());

  double first_rel = 0.0, second_rel = 0.0;
  for (std::size_t i = 0; i < grid.states.size(); ++i) {
    auto k = static_cast<std::size_t>(std::lround((grid.times[i] - times.front()) / 1e-3));
    MomentSet mom = grid_moments(grid.states[i]);
    first_rel = std::max(first_rel, (mom.first - b.Z[k]).cwiseAbs().maxCoeff() / scaleZ);
    second_rel =
        std::max(second_rel, (mom.second_centered - b.Delta2[k]).cwiseAbs().maxCoeff() / scaleD);
  }
  bool pass = first_rel <= 1e-4 && second_rel <= 1e-3 && t.elapsed() < 60.0;
  report(3, pass,
         "independent grid run tracks the moment system over t in [0,5]: first moments %.2e "
         "(tol 1e-4 rel), second moments %.2e (tol 1e-3 rel), %.1fs (limit 60s)",
         first_rel, second_rel, t.elapsed());
}

// --- criterion 4: assembled field against the grid solver -----------------

double final_l2_error(const QuadraticModel& m, const HermiteGaussianState& gamma, double dt) {
  auto times = make_time_grid(0.0, 5.0, dt);
  SolutionAssembly sol = base_solution(m, gamma, times);
  GridState start = sol.sample_x(0, -12.0, 12.0, 2048);
  SplitStepOptions opt;
  opt.snapshot_stride = static_cast<int>(times.size());  // keep first and last only
  SplitStepResult grid = split_step_evolve(start, m, times, opt);
  return compare_l2(grid.states.back(), sol.sample_x(sol.size() - 1, -12.0, 12.0, 2048)).raw;
}

void criterion4() {
  QuadraticModel m = coupled_trap(0.3, 5.0);
  HermiteGaussianState gamma = ground(cplx(0, 1), 0.0, 1.0);
  double err_coarse = final_l2_error(m, gamma, 1e-3);
  double err_fine = final_l2_error(m, gamma, 5e-4);
  double ratio = err_coarse / err_fine;
  bool pass = err_coarse <= 1e-4 && ratio >= 3.5 && ratio <= 4.5;
  report(4, pass,
         "assembled field vs grid at t=5: raw L2 %.2e (tol 1e-4), dt-halving ratio %.2f "
         "(expect 3.5..4.5)",
         err_coarse, ratio);
}

// --- criterion 5: operator branches, both routes ---------------------------

StateOperator raising_op() {
  WeylPolySymbol a{1, (WeylPolySymbol::position(1, 0).poly -
                       WeylPolySymbol::momentum(1, 0).poly * I_UNIT) *
                          (1.0 / std::sqrt(2.0))};
  return StateOperator::symbol_op(a);
}

void criterion5() {
  Timer t;
  QuadraticModel m = coupled_trap(0.3, 5.0);
  HermiteGaussianState gamma = ground(cplx(0, 1), 0.0, 1.0);
  auto times = make_time_grid(0.0, 5.0, 1e-3);
  SolutionAssembly base = base_solution(m, gamma, times);

  Vec mu(2);
  mu << 0.0, 0.5;
  struct Branch {
    const char* name;
    StateOperator op;
  };
  std::vector<Branch> branches = {
      {"displacement", StateOperator::displacement_op({1, mu})},
      {"position", StateOperator::symbol_op(WeylPolySymbol::position(1, 0))},
      {"raising", raising_op()},
  };

  double worst_cross = 0.0, worst_l2 = 0.0, worst_res = 0.0;
  for (const Branch& br : branches) {
    SolutionAssembly r1 = symmetry_route1(base, br.op);
    SolutionAssembly r2 = symmetry_route2(base, br.op);
    for (std::size_t k = 0; k < r1.size(); k += 100)
      worst_cross = std::max(worst_cross, compare_l2(r1.sample_x(k, -12, 12, 2048),
                                                     r2.sample_x(k, -12, 12, 2048))
                                              .raw);

    GridState start = r1.sample_x(0, -12.0, 12.0, 2048);
    SplitStepOptions opt;
    opt.snapshot_stride = 500;
    SplitStepResult grid = split_step_evolve(start, m, times, opt);
    for (std::size_t i = 0; i < grid.states.size(); ++i) {
      std::size_t k = r1.knot_near(grid.times[i]);
      worst_l2 = std::max(
          worst_l2, compare_l2(grid.states[i], r1.sample_x(k, -12.0, 12.0, 2048)).raw);
    }

    for (double tc : {1.0, 2.5, 4.0}) {
      std::size_t k = r1.knot_near(tc);
      std::vector<GridState> snaps = {r1.sample_x(k - 1, -12, 12, 2048),
                                      r1.sample_x(k, -12, 12, 2048),
                                      r1.sample_x(k + 1, -12, 12, 2048)};
      worst_res = std::max(worst_res, residual_norm(snaps, m).max);
    }
  }
  bool pass =
      worst_cross <= 1e-8 && worst_l2 <= 1e-4 && worst_res <= 1e-4 && t.elapsed() < 300.0;
  report(5, pass,
         "operator branches (displacement, position, raising): route agreement %.2e (tol 1e-8), "
         "branch vs grid %.2e (tol 1e-4), equation residual %.2e (tol 1e-4), %.1fs (limit 300s)",
         worst_cross, worst_l2, worst_res, t.elapsed());
}

// --- criterion 6: the coupling-free limit is the linear theory -------------

void criterion6() {
  QuadraticModel m = make_model(MatrixProvider::constant(Mat::Identity(2, 2)), 0.0, 2.0);
  HermiteGaussianState gamma = ground(cplx(0, 1), 0.5, -0.3);
  auto times = make_time_grid(0.0, 2.0, 1e-3);
  SolutionAssembly base = base_solution(m, gamma, times);
  StateOperator op = StateOperator::symbol_op(WeylPolySymbol::momentum(1, 0));
  SolutionAssembly branch = symmetry_route1(base, op);
  double alpha = std::stod(branch.notes.front().second);

  // independent construction: fine split-step evolution of gamma, then the
  // flow-transported momentum symbol applied spectrally on the grid
  auto fine = make_time_grid(0.0, 2.0, 2.5e-4);
  GridState start = sample_to_grid(gamma, -12.0, 12.0, 2048, 0.0);
  SplitStepOptions opt;
  opt.snapshot_stride = static_cast<int>(fine.size());
  SplitStepResult grid = split_step_evolve(start, m, fine, opt);

  const Mat& L = base.bundle.Lambda.back();
  Mat J = symplectic_form(1);
  Mat Linv = -J * L.transpose() * J;
  Vec coeff = Linv.transpose() * (Vec(2) << 1.0, 0.0).finished();  // p circ Lambda^{-1}
  GridState lhs = apply_hamiltonian(grid.states.back(), Mat::Zero(2, 2), coeff);
  for (auto& v : lhs.values) v /= alpha;

  double err = compare_l2(lhs, branch.sample_x(branch.size() - 1, -12.0, 12.0, 2048)).raw;
  report(6, err <= 1e-6,
         "coupling-free branch equals transported operator on the grid solution: raw L2 %.2e "
         "(tol 1e-6)",
         err);
}

// --- criterion 7: negative controls stay loud ------------------------------

void criterion7() {
  QuadraticModel m = coupled_trap(0.3, 5.0);
  HermiteGaussianState gamma = ground(cplx(0, 1), 0.0, 1.0);
  auto times = make_time_grid(0.0, 5.0, 1e-3);

  // (a) freeze the envelope: keep the correct trajectory but never propagate
  // the centered profile
  MomentSet mom = gaussian_moments(gamma);
  TrajectoryBundle bundle = evolve_bundle(m, mom.first, mom.second_centered, times);
  HermiteGaussianState phi0 = gamma;
  phi0.to_frame({1, mom.first}, 0.0);
  SolutionAssembly frozen = assemble_solution(
      m, std::move(bundle), [phi0](std::size_t) { return phi0; }, "frozen");
  std::size_t k = frozen.knot_near(2.5);
  std::vector<GridState> snaps = {frozen.sample_x(k - 1, -12, 12, 2048),
                                  frozen.sample_x(k, -12, 12, 2048),
                                  frozen.sample_x(k + 1, -12, 12, 2048)};
  double frozen_profile = residual_norm(snaps, m).max;

  // (b) freeze the symbol: skip the flow transport in the commutation defect
  auto coarse = make_time_grid(0.0, 2.0, 1e-2);
  SolutionAssembly base = base_solution(m, gamma, make_time_grid(0.0, 2.0, 1e-2));
  std::vector<WeylPolySymbol> frozen_hist(coarse.size(), WeylPolySymbol::position(1, 0));
  std::vector<HermiteGaussianState> probes = {base.u_frame(0), base.u_frame(100)};
  double frozen_symbol = kommut_residual(frozen_hist, m, coarse, probes);

  bool pass = frozen_profile > 0.1 && frozen_symbol > 0.1;
  report(7, pass,
         "negative controls: frozen-profile residual %.2f, frozen-symbol defect %.2f "
         "(both must exceed 0.1)",
         frozen_profile, frozen_symbol);
}

}  // namespace

int main() {
  std::printf("acceptance: nonlocal quadratic solver suite\n");
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  std::printf("acceptance: %d of 7 criteria failed\n", g_failures);
  return g_failures;
}
