#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace nlgpe {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

constexpr cplx I_UNIT{0.0, 1.0};

/// Point of the 2n-dimensional phase space, stored momentum-first: z = (p, x).
struct PhasePoint {
  int n = 0;   // spatial dimension; the vector has 2n entries
  Vec z;

  PhasePoint() = default;
  PhasePoint(int n_, Vec z_) : n(n_), z(std::move(z_)) {
    if (n < 1 || z.size() != 2 * n)
      throw std::invalid_argument("PhasePoint: vector must have 2n entries, n >= 1");
  }
  static PhasePoint zero(int n) { return PhasePoint(n, Vec::Zero(2 * n)); }

  Eigen::VectorBlock<Vec> momentum() { return z.head(n); }
  Eigen::VectorBlock<const Vec> momentum() const { return z.head(n); }
  Eigen::VectorBlock<Vec> position() { return z.tail(n); }
  Eigen::VectorBlock<const Vec> position() const { return z.tail(n); }
};

/// Standard symplectic matrix J = [[0, -I], [I, 0]] in (p, x) blocks; J^2 = -I.
inline Mat symplectic_form(int n) {
  if (n < 1) throw std::invalid_argument("symplectic_form: n must be >= 1");
  Mat J = Mat::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -Mat::Identity(n, n);
  J.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return J;
}

}  // namespace nlgpe
