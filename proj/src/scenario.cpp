#include "nlgpe/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nlgpe {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

class Collector {
 public:
  void add(const std::string& path, const std::string& msg) { items_.push_back(path + ": " + msg); }
  void merge(const std::vector<std::string>& more, const std::string& prefix) {
    for (const auto& m : more) items_.push_back(prefix + ": " + m);
  }
  bool ok() const { return items_.empty(); }
  void throw_if_any() const {
    if (!items_.empty()) throw ScenarioError(items_);
  }
  std::vector<std::string> items_;
};

double get_number(const json& j, const char* key, double fallback, const std::string& path,
                  Collector& diag) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) {
    diag.add(path + "." + key, "expected a number");
    return fallback;
  }
  return j[key].get<double>();
}

int get_int(const json& j, const char* key, int fallback, const std::string& path,
            Collector& diag) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) {
    diag.add(path + "." + key, "expected an integer");
    return fallback;
  }
  return j[key].get<int>();
}

bool parse_vec(const json& j, int size, Vec& out, const std::string& path, Collector& diag) {
  if (!j.is_array() || static_cast<int>(j.size()) != size) {
    diag.add(path, "expected an array of " + std::to_string(size) + " numbers");
    return false;
  }
  out = Vec::Zero(size);
  for (int i = 0; i < size; ++i) {
    if (!j[i].is_number()) {
      diag.add(path, "entry " + std::to_string(i) + " is not a number");
      return false;
    }
    out(i) = j[i].get<double>();
  }
  return true;
}

bool parse_mat(const json& j, int rows, int cols, Mat& out, const std::string& path,
               Collector& diag) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    diag.add(path, "expected " + std::to_string(rows) + " rows");
    return false;
  }
  out = Mat::Zero(rows, cols);
  for (int i = 0; i < rows; ++i) {
    Vec row;
    if (!parse_vec(j[i], cols, row, path + "[" + std::to_string(i) + "]", diag)) return false;
    out.row(i) = row.transpose();
  }
  return true;
}

MatrixProvider parse_matrix_provider(const json& j, int n, const std::string& path,
                                     Collector& diag) {
  const int d = 2 * n;
  MatrixProvider fallback = MatrixProvider::constant(Mat::Zero(d, d));
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    diag.add(path, "expected an object with a \"kind\" string");
    return fallback;
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "constant") {
    Mat value;
    if (!j.contains("value") || !parse_mat(j["value"], d, d, value, path + ".value", diag))
      return fallback;
    return MatrixProvider::constant(value);
  }
  if (kind == "cosine_xx") {
    double a = get_number(j, "a", 1.0, path, diag);
    double b = get_number(j, "b", 0.0, path, diag);
    double nu = get_number(j, "nu", 1.0, path, diag);
    double pp = get_number(j, "pp_scale", 1.0, path, diag);
    return MatrixProvider::cosine_xx(n, a, b, nu, pp);
  }
  if (kind == "sampled") {
    if (!j.contains("times") || !j["times"].is_array() || !j.contains("values") ||
        !j["values"].is_array() || j["times"].size() != j["values"].size() ||
        j["times"].size() < 2) {
      diag.add(path, "sampled provider needs matching \"times\" and \"values\" arrays (>= 2 knots)");
      return fallback;
    }
    std::vector<double> times;
    std::vector<Mat> values;
    for (std::size_t i = 0; i < j["times"].size(); ++i) {
      if (!j["times"][i].is_number()) {
        diag.add(path + ".times", "entry " + std::to_string(i) + " is not a number");
        return fallback;
      }
      times.push_back(j["times"][i].get<double>());
      Mat v;
      if (!parse_mat(j["values"][i], d, d, v, path + ".values[" + std::to_string(i) + "]", diag))
        return fallback;
      values.push_back(v);
    }
    try {
      return MatrixProvider::sampled(std::move(times), std::move(values));
    } catch (const std::exception& e) {
      diag.add(path, e.what());
      return fallback;
    }
  }
  diag.add(path + ".kind", "unknown provider kind \"" + kind + "\"");
  return fallback;
}

VectorProvider parse_vector_provider(const json& j, int n, const std::string& path,
                                     Collector& diag) {
  const int d = 2 * n;
  VectorProvider fallback = VectorProvider::constant(Vec::Zero(d));
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    diag.add(path, "expected an object with a \"kind\" string");
    return fallback;
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "constant") {
    Vec value;
    if (!j.contains("value") || !parse_vec(j["value"], d, value, path + ".value", diag))
      return fallback;
    return VectorProvider::constant(value);
  }
  if (kind == "sampled") {
    if (!j.contains("times") || !j["times"].is_array() || !j.contains("values") ||
        !j["values"].is_array() || j["times"].size() != j["values"].size() ||
        j["times"].size() < 2) {
      diag.add(path, "sampled provider needs matching \"times\" and \"values\" arrays (>= 2 knots)");
      return fallback;
    }
    std::vector<double> times;
    std::vector<Vec> values;
    for (std::size_t i = 0; i < j["times"].size(); ++i) {
      if (!j["times"][i].is_number()) {
        diag.add(path + ".times", "entry " + std::to_string(i) + " is not a number");
        return fallback;
      }
      times.push_back(j["times"][i].get<double>());
      Vec v;
      if (!parse_vec(j["values"][i], d, v, path + ".values[" + std::to_string(i) + "]", diag))
        return fallback;
      values.push_back(v);
    }
    try {
      return VectorProvider::sampled(std::move(times), std::move(values));
    } catch (const std::exception& e) {
      diag.add(path, e.what());
      return fallback;
    }
  }
  diag.add(path + ".kind", "unknown provider kind \"" + kind + "\"");
  return fallback;
}

MultiPoly parse_poly_terms(const json& j, int nvars, const std::string& path, Collector& diag) {
  MultiPoly poly(nvars);
  if (!j.is_array() || j.empty()) {
    diag.add(path, "expected a non-empty array of monomials");
    return poly;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& term = j[i];
    const std::string tpath = path + "[" + std::to_string(i) + "]";
    if (!term.is_object() || !term.contains("powers") || !term["powers"].is_array() ||
        static_cast<int>(term["powers"].size()) != nvars) {
      diag.add(tpath, "expected {powers: [" + std::to_string(nvars) + " ints], re, im}");
      continue;
    }
    std::vector<int> powers(nvars);
    bool ok = true;
    for (int v = 0; v < nvars; ++v) {
      if (!term["powers"][v].is_number_integer() || term["powers"][v].get<int>() < 0) {
        diag.add(tpath + ".powers", "entries must be non-negative integers");
        ok = false;
        break;
      }
      powers[v] = term["powers"][v].get<int>();
    }
    if (!ok) continue;
    double re = get_number(term, "re", 0.0, tpath, diag);
    double im = get_number(term, "im", 0.0, tpath, diag);
    poly.set_coeff(powers, poly.coeff(powers) + cplx{re, im});
  }
  return poly;
}

HermiteGaussianState parse_initial_state(const json& j, int n, double hbar, double norm_squared,
                                         Collector& diag) {
  HermiteGaussianState fallback = HermiteGaussianState::pure(n, hbar, I_UNIT * CMat::Identity(n, n));
  if (!j.is_object()) {
    diag.add("initial_state", "expected an object");
    return fallback;
  }
  std::string kind = j.contains("kind") && j["kind"].is_string() ? j["kind"].get<std::string>()
                                                                 : std::string("gaussian");
  if (kind != "gaussian" && kind != "hermite-gaussian") {
    diag.add("initial_state.kind", "unknown kind \"" + kind + "\"");
    return fallback;
  }
  Mat Qre = Mat::Zero(n, n), Qim = Mat::Identity(n, n);
  if (j.contains("Q_re")) parse_mat(j["Q_re"], n, n, Qre, "initial_state.Q_re", diag);
  if (j.contains("Q_im")) parse_mat(j["Q_im"], n, n, Qim, "initial_state.Q_im", diag);
  Vec center = Vec::Zero(2 * n);
  if (j.contains("center")) parse_vec(j["center"], 2 * n, center, "initial_state.center", diag);

  CMat Q = Qre.cast<cplx>() + I_UNIT * Qim.cast<cplx>();
  HermiteGaussianState state = fallback;
  try {
    state = HermiteGaussianState::pure_centered(n, hbar, Q, {n, center});
  } catch (const std::exception& e) {
    diag.add("initial_state", e.what());
    return fallback;
  }
  if (j.contains("poly")) {
    MultiPoly poly = parse_poly_terms(j["poly"], n, "initial_state.poly", diag);
    if (!poly.is_zero()) state.poly = state.poly * poly;
  } else if (kind == "hermite-gaussian") {
    diag.add("initial_state.poly", "hermite-gaussian initial state needs a poly block");
  }
  double norm = state.norm();
  if (norm <= 0.0) {
    diag.add("initial_state", "state has zero norm");
    return fallback;
  }
  state.amplitude *= std::sqrt(norm_squared) / norm;
  return state;
}

StateOperator parse_operator(const json& j, int n, double /*hbar*/, int max_degree,
                             Collector& diag) {
  StateOperator fallback = StateOperator::identity(n);
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    diag.add("symmetry.operator", "expected an object with a \"kind\" string");
    return fallback;
  }
  const std::string kind = j["kind"].get<std::string>();
  StateOperator op = fallback;
  if (kind == "displacement") {
    Vec mu;
    if (!j.contains("mu") || !parse_vec(j["mu"], 2 * n, mu, "symmetry.operator.mu", diag))
      return fallback;
    op = StateOperator::displacement_op({n, mu});
  } else if (kind == "polynomial") {
    if (!j.contains("terms")) {
      diag.add("symmetry.operator", "polynomial operator needs a \"terms\" array");
      return fallback;
    }
    MultiPoly poly = parse_poly_terms(j["terms"], 2 * n, "symmetry.operator.terms", diag);
    WeylPolySymbol sym{n, poly};
    if (sym.degree() > max_degree) {
      diag.add("symmetry.operator.terms",
               "degree overflow: degree " + std::to_string(sym.degree()) + " exceeds max_degree " +
                   std::to_string(max_degree));
      return fallback;
    }
    op = StateOperator::symbol_op(sym);
  } else if (kind == "identity") {
    op = StateOperator::identity(n);
  } else {
    diag.add("symmetry.operator.kind", "unknown operator kind \"" + kind + "\"");
    return fallback;
  }
  double sre = get_number(j, "scalar_re", 1.0, "symmetry.operator", diag);
  double sim = get_number(j, "scalar_im", 0.0, "symmetry.operator", diag);
  op.scalar = cplx{sre, sim};
  return op;
}

}  // namespace

ScenarioError::ScenarioError(std::vector<std::string> diagnostics)
    : std::runtime_error("scenario validation failed: " + join(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

Scenario parse_scenario_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError({std::string("document: not parseable: ") + e.what()});
  }
  Collector diag;
  Scenario sc;

  if (j.contains("name") && j["name"].is_string()) sc.name = j["name"].get<std::string>();

  if (!j.contains("model") || !j["model"].is_object()) {
    diag.add("model", "required object is missing");
    diag.throw_if_any();
  }
  const json& jm = j["model"];
  int n = get_int(jm, "n", 1, "model", diag);
  if (n < 1 || n > 2) diag.add("model.n", "spatial dimension must be 1 or 2");
  n = std::max(1, std::min(n, 2));

  sc.model = QuadraticModel::empty(n);
  sc.model.hbar = get_number(jm, "hbar", 1.0, "model", diag);
  sc.model.kappa = get_number(jm, "kappa", 0.0, "model", diag);
  sc.model.norm_squared = get_number(jm, "norm_squared", 1.0, "model", diag);
  // Diagnosed values are clamped so downstream construction stays well-formed
  // while the remaining checks run; throw_if_any still fires at the end.
  if (sc.model.hbar <= 0) {
    diag.add("model.hbar", "must be positive");
    sc.model.hbar = 1.0;
  }
  if (sc.model.norm_squared <= 0) {
    diag.add("model.norm_squared", "must be positive");
    sc.model.norm_squared = 1.0;
  }

  if (jm.contains("Hzz")) sc.model.Hzz = parse_matrix_provider(jm["Hzz"], n, "model.Hzz", diag);
  if (jm.contains("Hz")) sc.model.Hz = parse_vector_provider(jm["Hz"], n, "model.Hz", diag);
  if (jm.contains("Wzz")) sc.model.Wzz = parse_matrix_provider(jm["Wzz"], n, "model.Wzz", diag);
  if (jm.contains("Wzw")) sc.model.Wzw = parse_matrix_provider(jm["Wzw"], n, "model.Wzw", diag);
  if (jm.contains("Www")) sc.model.Www = parse_matrix_provider(jm["Www"], n, "model.Www", diag);

  if (!j.contains("time") || !j["time"].is_object()) {
    diag.add("time", "required object is missing");
  } else {
    const json& jt = j["time"];
    sc.time.t0 = get_number(jt, "t0", 0.0, "time", diag);
    sc.time.t1 = get_number(jt, "t1", 1.0, "time", diag);
    sc.time.dt = get_number(jt, "dt", 1e-3, "time", diag);
    sc.time.snapshot_stride = get_int(jt, "snapshot_stride", 100, "time", diag);
    if (sc.time.dt <= 0) diag.add("time.dt", "must be positive");
    if (sc.time.t1 <= sc.time.t0) diag.add("time.t1", "must exceed t0");
    if (sc.time.snapshot_stride < 1) diag.add("time.snapshot_stride", "must be >= 1");
    if (sc.time.dt > 0 && sc.time.t1 > sc.time.t0) {
      double steps = (sc.time.t1 - sc.time.t0) / sc.time.dt;
      if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
        diag.add("time.dt", "must divide t1 - t0 into whole steps");
    }
  }
  sc.model.t0 = sc.time.t0;
  sc.model.t1 = sc.time.t1;

  if (j.contains("grid")) {
    if (!j["grid"].is_object()) {
      diag.add("grid", "expected an object");
    } else {
      GridSpec g;
      g.x_min = get_number(j["grid"], "x_min", -10.0, "grid", diag);
      g.x_max = get_number(j["grid"], "x_max", 10.0, "grid", diag);
      g.points = get_int(j["grid"], "points", 1024, "grid", diag);
      if (g.x_max <= g.x_min) diag.add("grid.x_max", "must exceed x_min");
      if (g.points < 64 || (g.points & (g.points - 1)) != 0)
        diag.add("grid.points", "must be a power of two >= 64");
      sc.grid = g;
    }
  }

  if (j.contains("tolerances")) {
    const json& jt = j["tolerances"];
    sc.tolerances.l2 = get_number(jt, "l2", sc.tolerances.l2, "tolerances", diag);
    sc.tolerances.first_rel = get_number(jt, "first_rel", sc.tolerances.first_rel, "tolerances", diag);
    sc.tolerances.second_rel =
        get_number(jt, "second_rel", sc.tolerances.second_rel, "tolerances", diag);
    sc.tolerances.residual = get_number(jt, "residual", sc.tolerances.residual, "tolerances", diag);
    sc.tolerances.cross_route =
        get_number(jt, "cross_route", sc.tolerances.cross_route, "tolerances", diag);
  }

  if (!j.contains("initial_state")) {
    diag.add("initial_state", "required object is missing");
  } else {
    sc.initial = parse_initial_state(j["initial_state"], n, sc.model.hbar, sc.model.norm_squared,
                                     diag);
  }

  if (j.contains("symmetry")) {
    const json& js = j["symmetry"];
    if (!js.is_object()) {
      diag.add("symmetry", "expected an object");
    } else {
      SymmetrySpec sym;
      sym.max_degree = get_int(js, "max_degree", 4, "symmetry", diag);
      if (js.contains("route")) {
        const json& r = js["route"];
        if (r.is_number_integer() && r.get<int>() == 1) {
          sym.route = SymmetryRoute::One;
        } else if (r.is_number_integer() && r.get<int>() == 2) {
          sym.route = SymmetryRoute::Two;
        } else if (r.is_string() && r.get<std::string>() == "both") {
          sym.route = SymmetryRoute::Both;
        } else {
          diag.add("symmetry.route", "expected 1, 2, or \"both\"");
        }
      }
      if (!js.contains("operator")) {
        diag.add("symmetry.operator", "required object is missing");
      } else {
        sym.op = parse_operator(js["operator"], n, sc.model.hbar, sym.max_degree, diag);
      }
      sc.symmetry = sym;
    }
  }

  diag.merge(validate_model(sc.model), "model");
  diag.throw_if_any();
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError({"document: cannot open \"" + path + "\""});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

std::string patch_scenario_number(const std::string& text, const std::string& dotted_path,
                                  double value) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError({std::string("document: not parseable: ") + e.what()});
  }
  std::string pointer = "/";
  for (char c : dotted_path) pointer += (c == '.') ? '/' : c;
  json::json_pointer ptr(pointer);
  if (!j.contains(ptr)) throw ScenarioError({dotted_path + ": no such scenario field"});
  if (!j.at(ptr).is_number()) throw ScenarioError({dotted_path + ": not a numeric leaf"});
  j[ptr] = value;
  return j.dump(2);
}

}  // namespace nlgpe
