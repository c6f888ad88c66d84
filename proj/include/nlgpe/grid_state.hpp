#pragma once

#include <string>
#include <vector>

#include "nlgpe/hermite_gaussian.hpp"
#include "nlgpe/types.hpp"

namespace nlgpe {

/// Uniform-grid complex field in one or two spatial dimensions. Axes share the
/// window [x_min, x_max) and the per-axis point count (a power of two >= 64).
/// 2D values are row-major: index (i, j) -> i * points + j for (x1, x2) = (axis(i), axis(j)).
struct GridState {
  int n_dim = 1;
  int points = 64;
  double x_min = -1.0, x_max = 1.0;
  double t = 0.0;
  double hbar = 1.0;
  std::vector<cplx> values;

  double dx() const { return (x_max - x_min) / points; }
  double cell_volume() const { return n_dim == 1 ? dx() : dx() * dx(); }
  double axis(int i) const { return x_min + i * dx(); }
  size_t total() const { return values.size(); }

  double norm_squared() const;
  double norm() const;

  /// Fraction of the total mass in the outermost 5% of cells along any axis.
  double boundary_tail_fraction() const;
};

/// Throws std::invalid_argument on malformed grids (size, power-of-two, window).
void validate_grid(const GridState& gs);

/// Momentum grid values hbar * k for FFT index i along one axis.
std::vector<double> momentum_axis(const GridState& gs);

/// Evaluate an analytic state on a grid.
GridState sample_to_grid(const HermiteGaussianState& state, double x_min, double x_max,
                         int points, double t);

/// Raw little-endian doubles, interleaved (re, im), row-major; metadata sidecar
/// "<path>.json" holds {n_dim, points, x_min, x_max, t, hbar}.
void save_grid(const GridState& gs, const std::string& path_base);
GridState load_grid(const std::string& path_base);

}  // namespace nlgpe
