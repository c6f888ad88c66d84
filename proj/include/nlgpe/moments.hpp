#pragma once

#include "nlgpe/grid_state.hpp"
#include "nlgpe/hermite_gaussian.hpp"
#include "nlgpe/types.hpp"

namespace nlgpe {

/// Norm plus first and symmetrized-centered second phase-space moments,
/// momentum-first ordering. first and second are per unit norm; norm_squared
/// carries the field normalization separately.
struct MomentSet {
  int n = 1;
  double norm_squared = 0.0;
  Vec first;            // 2n
  Mat second_centered;  // 2n x 2n, [[pp, px], [xp, xx]], symmetric

  Mat pp() const { return second_centered.topLeftCorner(n, n); }
  Mat xx() const { return second_centered.bottomRightCorner(n, n); }
};

/// Grid moments; momentum parts use spectral differentiation. Throws
/// std::invalid_argument on zero-norm input.
MomentSet grid_moments(const GridState& gs);
PhasePoint first_moment(const GridState& gs);
Mat centered_second_moments(const GridState& gs);

/// Closed-form moments of the analytic Gaussian class.
MomentSet gaussian_moments(const HermiteGaussianState& state);

}  // namespace nlgpe
