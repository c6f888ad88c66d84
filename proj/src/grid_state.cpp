#include "nlgpe/grid_state.hpp"

#include <bit>
#include <cmath>
#include <fstream>

#include <json.hpp>

namespace nlgpe {

static_assert(std::endian::native == std::endian::little,
              "grid snapshot format assumes a little-endian host");

double GridState::norm_squared() const {
  double s = 0.0;
  for (const cplx& v : values) s += std::norm(v);
  return s * cell_volume();
}

double GridState::norm() const { return std::sqrt(norm_squared()); }

double GridState::boundary_tail_fraction() const {
  const int m = std::max(1, static_cast<int>(std::ceil(0.05 * points)));
  auto outer = [&](int i) { return i < m || i >= points - m; };
  double tail = 0.0, total = 0.0;
  if (n_dim == 1) {
    for (int i = 0; i < points; ++i) {
      double w = std::norm(values[i]);
      total += w;
      if (outer(i)) tail += w;
    }
  } else {
    for (int i = 0; i < points; ++i)
      for (int j = 0; j < points; ++j) {
        double w = std::norm(values[static_cast<size_t>(i) * points + j]);
        total += w;
        if (outer(i) || outer(j)) tail += w;
      }
  }
  return total > 0.0 ? tail / total : 0.0;
}

void validate_grid(const GridState& gs) {
  if (gs.n_dim != 1 && gs.n_dim != 2)
    throw std::invalid_argument("GridState: n_dim must be 1 or 2");
  if (gs.points < 64 || (gs.points & (gs.points - 1)) != 0)
    throw std::invalid_argument("GridState: points must be a power of two >= 64");
  if (!(gs.x_max > gs.x_min)) throw std::invalid_argument("GridState: x_max must exceed x_min");
  if (!(gs.hbar > 0)) throw std::invalid_argument("GridState: hbar must be positive");
  size_t expect = gs.n_dim == 1 ? static_cast<size_t>(gs.points)
                                : static_cast<size_t>(gs.points) * gs.points;
  if (gs.values.size() != expect)
    throw std::invalid_argument("GridState: value count does not match the grid");
}

std::vector<double> momentum_axis(const GridState& gs) {
  std::vector<double> p(gs.points);
  const double dk = 2.0 * M_PI / (gs.x_max - gs.x_min);
  for (int i = 0; i < gs.points; ++i) {
    int idx = i < gs.points / 2 ? i : i - gs.points;
    p[i] = gs.hbar * dk * idx;
  }
  return p;
}

GridState sample_to_grid(const HermiteGaussianState& state, double x_min, double x_max,
                         int points, double t) {
  GridState gs;
  gs.n_dim = state.n;
  gs.points = points;
  gs.x_min = x_min;
  gs.x_max = x_max;
  gs.t = t;
  gs.hbar = state.hbar;
  if (state.n == 1) {
    gs.values.resize(points);
    Vec u(1);
    for (int i = 0; i < points; ++i) {
      u(0) = gs.axis(i);
      gs.values[i] = state.evaluate(u);
    }
  } else if (state.n == 2) {
    gs.values.resize(static_cast<size_t>(points) * points);
    Vec u(2);
    for (int i = 0; i < points; ++i) {
      u(0) = gs.axis(i);
      for (int j = 0; j < points; ++j) {
        u(1) = gs.axis(j);
        gs.values[static_cast<size_t>(i) * points + j] = state.evaluate(u);
      }
    }
  } else {
    throw std::invalid_argument("sample_to_grid: only 1D/2D states are supported");
  }
  validate_grid(gs);
  return gs;
}

void save_grid(const GridState& gs, const std::string& path_base) {
  validate_grid(gs);
  std::ofstream bin(path_base + ".bin", std::ios::binary | std::ios::trunc);
  if (!bin) throw std::runtime_error("save_grid: cannot open " + path_base + ".bin");
  for (const cplx& v : gs.values) {
    double re = v.real(), im = v.imag();
    bin.write(reinterpret_cast<const char*>(&re), sizeof re);
    bin.write(reinterpret_cast<const char*>(&im), sizeof im);
  }
  bin.close();
  nlohmann::json meta{{"n_dim", gs.n_dim}, {"points", gs.points},   {"x_min", gs.x_min},
                      {"x_max", gs.x_max}, {"t", gs.t},             {"hbar", gs.hbar}};
  std::ofstream side(path_base + ".json", std::ios::trunc);
  side << meta.dump(2) << "\n";
}

GridState load_grid(const std::string& path_base) {
  std::ifstream side(path_base + ".json");
  if (!side) throw std::runtime_error("load_grid: cannot open " + path_base + ".json");
  nlohmann::json meta = nlohmann::json::parse(side);
  GridState gs;
  gs.n_dim = meta.at("n_dim").get<int>();
  gs.points = meta.at("points").get<int>();
  gs.x_min = meta.at("x_min").get<double>();
  gs.x_max = meta.at("x_max").get<double>();
  gs.t = meta.at("t").get<double>();
  gs.hbar = meta.at("hbar").get<double>();
  size_t expect = gs.n_dim == 1 ? static_cast<size_t>(gs.points)
                                : static_cast<size_t>(gs.points) * gs.points;
  gs.values.resize(expect);
  std::ifstream bin(path_base + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("load_grid: cannot open " + path_base + ".bin");
  for (cplx& v : gs.values) {
    double re = 0, im = 0;
    bin.read(reinterpret_cast<char*>(&re), sizeof re);
    bin.read(reinterpret_cast<char*>(&im), sizeof im);
    v = {re, im};
  }
  if (!bin) throw std::runtime_error("load_grid: truncated binary payload");
  validate_grid(gs);
  return gs;
}

}  // namespace nlgpe
