#include "nlgpe/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "nlgpe/moments.hpp"
#include "nlgpe/reconstruction.hpp"
#include "nlgpe/reference_solver.hpp"

namespace nlgpe {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_vec(const Vec& v) {
  std::string out;
  for (int i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

std::string now_iso() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

// Key=value report, insertion-ordered, no timestamps (byte-stable reruns).
struct Report {
  std::vector<std::pair<std::string, std::string>> rows;
  void add(const std::string& k, const std::string& v) { rows.emplace_back(k, v); }
  // without this overload a string literal would convert to bool, not string
  void add(const std::string& k, const char* v) { rows.emplace_back(k, v); }
  void add(const std::string& k, double v) { rows.emplace_back(k, fmt(v)); }
  void add(const std::string& k, bool v) { rows.emplace_back(k, v ? "true" : "false"); }
  void write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& [k, v] : rows) out << k << "=" << v << "\n";
  }
};

struct RunLog {
  std::ofstream out;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  bool quiet = false;

  RunLog(const std::filesystem::path& dir, bool q) : out(dir / "run.log"), quiet(q) {
    out << "start=" << now_iso() << "\n";
  }
  void line(const std::string& s) {
    out << s << "\n";
    if (!quiet) std::cout << s << "\n";
  }
  ~RunLog() {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << "elapsed_s=" << fmt(secs) << "\n";
  }
};

// Cumulative -1/2 kappa_tilde Integral tr(Www Delta2) dt, the share of the
// action produced by the second-moment coupling (zero when kappa = 0).
std::vector<double> trace_phase_series(const QuadraticModel& m, const TrajectoryBundle& b) {
  std::vector<double> s(b.size(), 0.0);
  const double kt = m.kappa_tilde();
  if (kt == 0.0) return s;
  auto f = [&](std::size_t k) {
    return 0.5 * kt * (m.Www(b.times[k]) * b.Delta2[k]).trace();
  };
  double prev = f(0);
  for (std::size_t k = 1; k < b.size(); ++k) {
    double cur = f(k);
    s[k] = s[k - 1] - 0.5 * (prev + cur) * (b.times[k] - b.times[k - 1]);
    prev = cur;
  }
  return s;
}

void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryBundle& b,
                          const std::vector<double>& s_trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const int d = 2 * b.n;
  out << "t";
  for (int i = 0; i < d; ++i) out << ",Z" << i;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out << ",D" << i << j;
  out << ",S,S_trace\n";
  for (std::size_t k = 0; k < b.size(); ++k) {
    out << fmt(b.times[k]);
    for (int i = 0; i < d; ++i) out << "," << fmt(b.Z[k](i));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out << "," << fmt(b.Delta2[k](i, j));
    out << "," << fmt(b.S[k]) << "," << fmt(s_trace[k]) << "\n";
  }
}

void write_moments_csv(const std::filesystem::path& path, const std::vector<MomentReportRow>& rows,
                       int n) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t,norm";
  for (int i = 0; i < 2 * n; ++i) out << ",first" << i;
  out << ",first_defect,second_defect,centering\n";
  for (const auto& r : rows) {
    out << fmt(r.t) << "," << fmt(r.norm);
    for (int i = 0; i < 2 * n; ++i) out << "," << fmt(r.first(i));
    out << "," << fmt(r.first_defect) << "," << fmt(r.second_defect) << "," << fmt(r.centering)
        << "\n";
  }
}

double det_delta2_drift(const TrajectoryBundle& b) {
  double d0 = b.Delta2.front().determinant();
  double scale = std::max(std::abs(d0), 1e-300);
  double worst = 0.0;
  for (const Mat& d : b.Delta2)
    worst = std::max(worst, std::abs(d.determinant() - d0) / scale);
  return worst;
}

// Mean-removed upcrossing spacing of the first position coordinate; NaN when
// fewer than two upcrossings exist.
double period_estimate(const std::vector<double>& t, const TrajectoryBundle& b) {
  const int n = b.n;
  double mean = 0.0;
  for (const Vec& z : b.Z) mean += z(n);
  mean /= static_cast<double>(b.size());
  std::vector<double> up;
  for (std::size_t k = 1; k < b.size(); ++k) {
    double a = b.Z[k - 1](n) - mean, c = b.Z[k](n) - mean;
    if (a < 0.0 && c >= 0.0) {
      double f = (c - a) > 0.0 ? -a / (c - a) : 0.0;
      up.push_back(t[k - 1] + f * (t[k] - t[k - 1]));
    }
  }
  if (up.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return (up.back() - up.front()) / static_cast<double>(up.size() - 1);
}

// Independent re-derivation of the effective potential by O(N^2) quadrature
// on a coarse grid; returns the max deviation from the moment contraction.
double oracle_potential_diff(const Scenario& sc) {
  if (sc.model.n != 1) return std::numeric_limits<double>::quiet_NaN();
  double x_min = sc.grid ? sc.grid->x_min : -12.0;
  double x_max = sc.grid ? sc.grid->x_max : 12.0;
  GridState psi = sample_to_grid(sc.initial, x_min, x_max, 256, sc.model.t0);
  std::vector<double> a = potential_values(effective_potential(psi, sc.model, sc.model.t0), psi);
  std::vector<double> b = direct_quadrature_potential(psi, sc.model, sc.model.t0);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Equation defect of the assembled field at up to five interior knots.
double assembly_residual_max(const SolutionAssembly& a, const GridSpec& g) {
  const std::size_t last = a.size() - 1;
  if (last < 2) return 0.0;
  double worst = 0.0;
  for (double frac : {0.15, 0.35, 0.5, 0.7, 0.9}) {
    auto k = static_cast<std::size_t>(frac * static_cast<double>(last));
    k = std::clamp<std::size_t>(k, 1, last - 1);
    std::vector<GridState> snaps = {a.sample_x(k - 1, g.x_min, g.x_max, g.points),
                                    a.sample_x(k, g.x_min, g.x_max, g.points),
                                    a.sample_x(k + 1, g.x_min, g.x_max, g.points)};
    worst = std::max(worst, residual_norm(snaps, a.model).max);
  }
  return worst;
}

struct GridTracking {
  double l2_raw_max = 0.0;
  double l2_aligned_max = 0.0;
  double l2_final = 0.0;
  double first_rel = 0.0;
  double second_rel = 0.0;
  double norm_drift = 0.0;
  double tail_fraction = 0.0;
  std::vector<double> times, l2_raw, l2_aligned, first_err, second_err;
};

// Split-step the assembly's own initial data and track the distance to the
// assembled field plus the moment tracking error at every stored knot.
GridTracking track_against_grid(const SolutionAssembly& a, const GridSpec& g, int stride) {
  GridState start = a.sample_x(0, g.x_min, g.x_max, g.points);
  SplitStepOptions opt;
  opt.snapshot_stride = stride;
  SplitStepResult split = split_step_evolve(start, a.model, a.bundle.times, opt);

  double first_scale = 0.0, second_scale = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    first_scale = std::max(first_scale, a.bundle.Z[k].cwiseAbs().maxCoeff());
    second_scale = std::max(second_scale, a.bundle.Delta2[k].cwiseAbs().maxCoeff());
  }
  if (first_scale < 1e-12) first_scale = 1.0;
  if (second_scale < 1e-12) second_scale = 1.0;

  GridTracking tr;
  tr.norm_drift = split.max_norm_drift;
  tr.tail_fraction = split.max_tail_fraction;
  for (std::size_t i = 0; i < split.states.size(); ++i) {
    std::size_t k = a.knot_near(split.times[i]);
    GridState analytic = a.sample_x(k, g.x_min, g.x_max, g.points);
    L2Comparison cmp = compare_l2(split.states[i], analytic);
    MomentSet mg = grid_moments(split.states[i]);
    double fe = (mg.first - a.bundle.Z[k]).cwiseAbs().maxCoeff() / first_scale;
    double se = (mg.second_centered - a.bundle.Delta2[k]).cwiseAbs().maxCoeff() / second_scale;
    tr.times.push_back(split.times[i]);
    tr.l2_raw.push_back(cmp.raw);
    tr.l2_aligned.push_back(cmp.phase_aligned);
    tr.first_err.push_back(fe);
    tr.second_err.push_back(se);
    tr.l2_raw_max = std::max(tr.l2_raw_max, cmp.raw);
    tr.l2_aligned_max = std::max(tr.l2_aligned_max, cmp.phase_aligned);
    tr.first_rel = std::max(tr.first_rel, fe);
    tr.second_rel = std::max(tr.second_rel, se);
    tr.l2_final = cmp.raw;
  }
  return tr;
}

struct EvolveResult {
  SolutionAssembly assembly;
  std::vector<double> s_trace;
  std::vector<MomentReportRow> rows;
  double norm_defect_max = 0.0;
  double centering_max = 0.0;
  double first_defect_max = 0.0;
  double second_defect_max = 0.0;
  double det_drift = 0.0;
  double period = 0.0;
};

EvolveResult evolve_base(const Scenario& sc) {
  std::vector<double> times = make_time_grid(sc.model.t0, sc.model.t1, sc.time.dt);
  EvolveResult r{base_solution(sc.model, sc.initial, times), {}, {}};
  r.s_trace = trace_phase_series(sc.model, r.assembly.bundle);
  r.rows = norm_and_moment_report(r.assembly, static_cast<std::size_t>(sc.time.snapshot_stride));
  const double norm_ref = std::sqrt(sc.model.norm_squared);
  for (const auto& row : r.rows) {
    r.norm_defect_max = std::max(r.norm_defect_max, std::abs(row.norm - norm_ref));
    r.centering_max = std::max(r.centering_max, row.centering);
    r.first_defect_max = std::max(r.first_defect_max, row.first_defect);
    r.second_defect_max = std::max(r.second_defect_max, row.second_defect);
  }
  r.det_drift = det_delta2_drift(r.assembly.bundle);
  r.period = period_estimate(times, r.assembly.bundle);
  return r;
}

void add_evolve_keys(Report& rep, const Scenario& sc, const EvolveResult& r) {
  rep.add("scenario", sc.name);
  rep.add("n", std::to_string(sc.model.n));
  rep.add("kappa_tilde", sc.model.kappa_tilde());
  rep.add("knots", std::to_string(r.assembly.size()));
  rep.add("dt", sc.time.dt);
  rep.add("norm_defect_max", r.norm_defect_max);
  rep.add("centering_max", r.centering_max);
  rep.add("first_defect_max", r.first_defect_max);
  rep.add("second_defect_max", r.second_defect_max);
  rep.add("symplectic_defect_max", r.assembly.bundle.max_symplectic_defect);
  rep.add("det_delta2_drift_max", r.det_drift);
  rep.add("projections", std::to_string(r.assembly.bundle.projection_count));
  rep.add("S_final", r.assembly.bundle.S.back());
  rep.add("S_trace_final", r.s_trace.back());
  rep.add("Z_final", fmt_vec(r.assembly.bundle.Z.back()));
  rep.add("period_estimate", r.period);
}

std::filesystem::path prepare_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::filesystem::create_directories(p);
  return p;
}

std::string snapshot_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "psi_%06zu", k);
  return buf;
}

}  // namespace

int run_evolve(const Scenario& sc, const RunOptions& opt) {
  auto dir = prepare_dir(opt.out_dir);
  RunLog log(dir, opt.quiet);
  log.line("evolve: scenario '" + sc.name + "', " +
           std::to_string(make_time_grid(sc.model.t0, sc.model.t1, sc.time.dt).size()) + " knots");

  EvolveResult r = evolve_base(sc);
  write_trajectory_csv(dir / "trajectory.csv", r.assembly.bundle, r.s_trace);
  write_moments_csv(dir / "moments.csv", r.rows, sc.model.n);

  Report rep;
  add_evolve_keys(rep, sc, r);

  if (sc.grid) {
    const auto& g = *sc.grid;
    std::size_t count = 0;
    double tail = 0.0;
    const std::size_t stride = static_cast<std::size_t>(sc.time.snapshot_stride);
    const std::size_t last = r.assembly.size() - 1;
    for (std::size_t k = 0; k <= last; k += stride) {
      GridState gs = r.assembly.sample_x(k, g.x_min, g.x_max, g.points);
      tail = std::max(tail, gs.boundary_tail_fraction());
      save_grid(gs, (dir / snapshot_name(k)).string());
      ++count;
    }
    if ((last % stride) != 0) {
      GridState gs = r.assembly.sample_x(last, g.x_min, g.x_max, g.points);
      tail = std::max(tail, gs.boundary_tail_fraction());
      save_grid(gs, (dir / snapshot_name(last)).string());
      ++count;
    }
    rep.add("snapshots", std::to_string(count));
    rep.add("tail_fraction_max", tail);
    if (tail > 1e-8) log.line("evolve: warning, boundary mass fraction " + fmt(tail));
  }
  if (opt.oracle_mode) rep.add("oracle_potential_max_diff", oracle_potential_diff(sc));

  rep.write(dir / "report.txt");
  log.line("evolve: S_final=" + fmt(r.assembly.bundle.S.back()) +
           " symplectic_defect=" + fmt(r.assembly.bundle.max_symplectic_defect));
  log.line("evolve: wrote " + (dir / "report.txt").string());
  return 0;
}

int run_validate(const Scenario& sc, const RunOptions& opt) {
  if (!sc.grid)
    throw ScenarioError({"grid: grid block required for validate outputs"});
  auto dir = prepare_dir(opt.out_dir);
  RunLog log(dir, opt.quiet);
  log.line("validate: scenario '" + sc.name + "'");

  EvolveResult r = evolve_base(sc);
  write_trajectory_csv(dir / "trajectory.csv", r.assembly.bundle, r.s_trace);

  GridTracking tr = track_against_grid(r.assembly, *sc.grid, sc.time.snapshot_stride);
  double residual = assembly_residual_max(r.assembly, *sc.grid);

  {
    std::ofstream csv(dir / "validate.csv");
    csv << "t,l2_raw,l2_aligned,first_err,second_err\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i)
      csv << fmt(tr.times[i]) << "," << fmt(tr.l2_raw[i]) << "," << fmt(tr.l2_aligned[i]) << ","
          << fmt(tr.first_err[i]) << "," << fmt(tr.second_err[i]) << "\n";
  }

  const ToleranceSpec& tol = sc.tolerances;
  bool pass_l2 = tr.l2_raw_max <= tol.l2;
  bool pass_first = tr.first_rel <= tol.first_rel;
  bool pass_second = tr.second_rel <= tol.second_rel;
  bool pass_residual = residual <= tol.residual;

  Report rep;
  add_evolve_keys(rep, sc, r);
  rep.add("l2_raw_max", tr.l2_raw_max);
  rep.add("l2_aligned_max", tr.l2_aligned_max);
  rep.add("l2_final", tr.l2_final);
  rep.add("first_moment_rel_err", tr.first_rel);
  rep.add("second_moment_rel_err", tr.second_rel);
  rep.add("residual_max", residual);
  rep.add("grid_norm_drift", tr.norm_drift);
  rep.add("grid_tail_fraction", tr.tail_fraction);
  if (opt.oracle_mode) rep.add("oracle_potential_max_diff", oracle_potential_diff(sc));
  rep.add("pass_l2", pass_l2);
  rep.add("pass_first_moment", pass_first);
  rep.add("pass_second_moment", pass_second);
  rep.add("pass_residual", pass_residual);
  if (!pass_l2)
    rep.add("hint", "split-step error is O(dt^2); try halving time.dt or widening the grid");
  rep.write(dir / "report.txt");

  auto verdict = [&](const std::string& name, double value, double t, bool ok) {
    log.line("validate: " + name + " " + fmt(value) + " (tol " + fmt(t) + ") " +
             (ok ? "PASS" : "FAIL"));
  };
  verdict("l2 raw max", tr.l2_raw_max, tol.l2, pass_l2);
  verdict("first moment rel err", tr.first_rel, tol.first_rel, pass_first);
  verdict("second moment rel err", tr.second_rel, tol.second_rel, pass_second);
  verdict("residual max", residual, tol.residual, pass_residual);

  return (pass_l2 && pass_first && pass_second && pass_residual) ? 0 : 3;
}

int run_symmetry(const Scenario& sc, const RunOptions& opt) {
  if (!sc.symmetry)
    throw ScenarioError({"symmetry: symmetry block required for the symmetry runner"});
  auto dir = prepare_dir(opt.out_dir);
  RunLog log(dir, opt.quiet);
  log.line("symmetry: scenario '" + sc.name + "'");

  std::vector<double> times = make_time_grid(sc.model.t0, sc.model.t1, sc.time.dt);
  SolutionAssembly base = base_solution(sc.model, sc.initial, times);

  const SymmetrySpec& sym = *sc.symmetry;
  std::optional<SolutionAssembly> a1, a2;
  if (sym.route != SymmetryRoute::Two) a1 = symmetry_route1(base, sym.op);
  if (sym.route != SymmetryRoute::One) a2 = symmetry_route2(base, sym.op);
  const SolutionAssembly& lead = a1 ? *a1 : *a2;

  const auto stride = static_cast<std::size_t>(sc.time.snapshot_stride);
  Report rep;
  rep.add("scenario", sc.name);
  rep.add("route", sym.route == SymmetryRoute::One   ? "1"
                   : sym.route == SymmetryRoute::Two ? "2"
                                                     : "both");
  for (const auto& [k, v] : lead.notes) rep.add(k, v);

  // Grid-sampled L2: the closed-form bracket distance floors at sqrt(eps),
  // which is the same order as the tolerance on route agreement.
  GridSpec cw = sc.grid ? *sc.grid : GridSpec{-16.0, 16.0, sc.model.n == 1 ? 1024 : 128};
  double cross = 0.0;
  std::vector<double> cross_series;
  if (a1 && a2) {
    for (std::size_t k = 0; k < a1->size(); k += stride) {
      double d = compare_l2(a1->sample_x(k, cw.x_min, cw.x_max, cw.points),
                            a2->sample_x(k, cw.x_min, cw.x_max, cw.points))
                     .raw;
      cross_series.push_back(d);
      cross = std::max(cross, d);
    }
    rep.add("cross_route_max", cross);
  }
  if (a1) rep.add("centering_route1", centering_check(*a1, stride));
  if (a2) rep.add("centering_route2", centering_check(*a2, stride));

  bool pass_cross = !(a1 && a2) || cross <= sc.tolerances.cross_route;
  bool pass_l2 = true, pass_residual = true;

  if (sc.grid) {
    GridTracking tr = track_against_grid(lead, *sc.grid, sc.time.snapshot_stride);
    double residual = assembly_residual_max(lead, *sc.grid);
    pass_l2 = tr.l2_raw_max <= sc.tolerances.l2;
    pass_residual = residual <= sc.tolerances.residual;
    rep.add("l2_raw_max", tr.l2_raw_max);
    rep.add("l2_final", tr.l2_final);
    rep.add("residual_max", residual);
    rep.add("grid_norm_drift", tr.norm_drift);

    std::ofstream csv(dir / "symmetry.csv");
    csv << "t,l2_raw,l2_aligned" << (a1 && a2 ? ",cross_route" : "") << "\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      csv << fmt(tr.times[i]) << "," << fmt(tr.l2_raw[i]) << "," << fmt(tr.l2_aligned[i]);
      if (a1 && a2 && i < cross_series.size()) csv << "," << fmt(cross_series[i]);
      csv << "\n";
    }
  } else if (a1 && a2) {
    std::ofstream csv(dir / "symmetry.csv");
    csv << "t,cross_route\n";
    for (std::size_t i = 0; i < cross_series.size(); ++i)
      csv << fmt(times[std::min(i * stride, times.size() - 1)]) << "," << fmt(cross_series[i])
          << "\n";
  }

  rep.add("pass_cross_route", pass_cross);
  if (sc.grid) {
    rep.add("pass_l2", pass_l2);
    rep.add("pass_residual", pass_residual);
  }
  rep.write(dir / "report.txt");

  if (a1 && a2)
    log.line("symmetry: cross-route max " + fmt(cross) + " (tol " + fmt(sc.tolerances.cross_route) +
             ") " + (pass_cross ? "PASS" : "FAIL"));
  log.line("symmetry: wrote " + (dir / "report.txt").string());
  return (pass_cross && pass_l2 && pass_residual) ? 0 : 3;
}

int run_sweep(const std::string& scenario_text, const std::string& axis,
              const std::vector<double>& values, const RunOptions& opt) {
  if (axis.empty()) throw ScenarioError({"sweep: --axis is required"});
  if (values.empty()) throw ScenarioError({"sweep: at least one --values entry is required"});
  auto dir = prepare_dir(opt.out_dir);
  RunLog log(dir, opt.quiet);
  log.line("sweep: axis '" + axis + "', " + std::to_string(values.size()) + " values");

  std::ofstream csv(dir / "sweep.csv");
  if (!csv) throw std::runtime_error("cannot write sweep.csv");
  bool header_done = false;
  int n0 = -1;

  for (std::size_t i = 0; i < values.size(); ++i) {
    std::string patched = patch_scenario_number(scenario_text, axis, values[i]);
    Scenario sc = parse_scenario_text(patched);
    if (n0 < 0) n0 = sc.model.n;
    if (sc.model.n != n0) throw ScenarioError({"sweep: model.n must not vary across rows"});

    RunOptions row_opt;
    row_opt.out_dir = (dir / "rows" / std::to_string(i)).string();
    row_opt.quiet = true;
    auto row_dir = prepare_dir(row_opt.out_dir);

    EvolveResult r = evolve_base(sc);
    write_trajectory_csv(row_dir / "trajectory.csv", r.assembly.bundle, r.s_trace);
    Report rep;
    add_evolve_keys(rep, sc, r);

    double l2_final = std::numeric_limits<double>::quiet_NaN();
    double residual = std::numeric_limits<double>::quiet_NaN();
    if (sc.grid) {
      GridTracking tr = track_against_grid(r.assembly, *sc.grid, sc.time.snapshot_stride);
      residual = assembly_residual_max(r.assembly, *sc.grid);
      l2_final = tr.l2_final;
      rep.add("l2_final", l2_final);
      rep.add("residual_max", residual);
    }
    rep.write(row_dir / "report.txt");

    if (!header_done) {
      csv << "axis,value,S_final";
      for (int c = 0; c < 2 * n0; ++c) csv << ",Z_final" << c;
      csv << ",period_estimate";
      if (sc.grid) csv << ",l2_final,residual_max";
      csv << "\n";
      header_done = true;
    }
    csv << axis << "," << fmt(values[i]) << "," << fmt(r.assembly.bundle.S.back());
    for (int c = 0; c < 2 * n0; ++c) csv << "," << fmt(r.assembly.bundle.Z.back()(c));
    csv << "," << fmt(r.period);
    if (sc.grid) csv << "," << fmt(l2_final) << "," << fmt(residual);
    csv << "\n";
    log.line("sweep: row " + std::to_string(i) + " " + axis + "=" + fmt(values[i]) +
             " S_final=" + fmt(r.assembly.bundle.S.back()));
  }
  log.line("sweep: wrote " + (dir / "sweep.csv").string());
  return 0;
}

}  // namespace nlgpe
