#pragma once

#include <string>
#include <vector>

#include "nlgpe/types.hpp"

namespace nlgpe {

/// Time-dependent coefficient sources for the model matrices/vectors.
/// Three kinds:
///   - constant: one fixed value,
///   - sampled: knot values with linear interpolation, exact at knots,
///   - profile "cosine_xx": pp block = pp_scale * I, xx block = (a + b*cos(nu*t)) * I,
///     cross blocks zero (matrix providers only).
class MatrixProvider {
 public:
  static MatrixProvider constant(Mat value);
  static MatrixProvider sampled(std::vector<double> times, std::vector<Mat> values);
  static MatrixProvider cosine_xx(int n, double a, double b, double nu, double pp_scale = 1.0);

  Mat operator()(double t) const;

  int rows() const;
  /// Time interval on which the provider is defined; sampled kinds are bounded
  /// by their knots, the others are unbounded.
  bool covers(double t0, double t1) const;
  bool is_constant() const { return kind_ == Kind::Constant; }

 private:
  enum class Kind { Constant, Sampled, CosineXX };
  Kind kind_ = Kind::Constant;
  Mat value_;
  std::vector<double> times_;
  std::vector<Mat> values_;
  int n_ = 0;
  double a_ = 0, b_ = 0, nu_ = 0, pp_scale_ = 1;
};

class VectorProvider {
 public:
  static VectorProvider constant(Vec value);
  static VectorProvider sampled(std::vector<double> times, std::vector<Vec> values);

  Vec operator()(double t) const;

  int size() const;
  bool covers(double t0, double t1) const;

 private:
  enum class Kind { Constant, Sampled };
  Kind kind_ = Kind::Constant;
  Vec value_;
  std::vector<double> times_;
  std::vector<Vec> values_;
};

}  // namespace nlgpe
