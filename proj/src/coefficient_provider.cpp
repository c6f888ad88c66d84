#include "nlgpe/coefficient_provider.hpp"

#include <algorithm>
#include <cmath>

namespace nlgpe {

namespace {

// Shared interpolation kernel. Knot hits are returned exactly, not via the
// blended formula, so provider(t_k) == values[k] bit-for-bit.
template <typename T>
T interp(const std::vector<double>& ts, const std::vector<T>& vs, double t) {
  // Integrator stages can overshoot the window by a few ulps; absorb that.
  const double slack = 1e-9 * std::max({1.0, std::abs(ts.front()), std::abs(ts.back())});
  if (t > ts.back() && t <= ts.back() + slack) t = ts.back();
  if (t < ts.front() && t >= ts.front() - slack) t = ts.front();
  if (t < ts.front() || t > ts.back())
    throw std::out_of_range("sampled provider queried outside its knot range");
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  if (it != ts.end() && *it == t) return vs[static_cast<size_t>(it - ts.begin())];
  size_t hi = static_cast<size_t>(it - ts.begin());
  size_t lo = hi - 1;
  double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
  return vs[lo] + w * (vs[hi] - vs[lo]);
}

void check_knots(const std::vector<double>& ts, size_t nvals) {
  if (ts.size() < 2 || ts.size() != nvals)
    throw std::invalid_argument("sampled provider needs >= 2 knots matching the value count");
  for (size_t i = 1; i < ts.size(); ++i)
    if (!(ts[i] > ts[i - 1]))
      throw std::invalid_argument("sampled provider knots must be strictly increasing");
}

}  // namespace

MatrixProvider MatrixProvider::constant(Mat value) {
  if (value.rows() != value.cols() || value.rows() < 1)
    throw std::invalid_argument("matrix provider value must be square and non-empty");
  MatrixProvider p;
  p.kind_ = Kind::Constant;
  p.value_ = std::move(value);
  return p;
}

MatrixProvider MatrixProvider::sampled(std::vector<double> times, std::vector<Mat> values) {
  check_knots(times, values.size());
  for (const Mat& m : values)
    if (m.rows() != values.front().rows() || m.cols() != values.front().cols() ||
        m.rows() != m.cols())
      throw std::invalid_argument("sampled matrix provider values must be square, same size");
  MatrixProvider p;
  p.kind_ = Kind::Sampled;
  p.times_ = std::move(times);
  p.values_ = std::move(values);
  return p;
}

MatrixProvider MatrixProvider::cosine_xx(int n, double a, double b, double nu, double pp_scale) {
  if (n < 1) throw std::invalid_argument("cosine_xx profile needs n >= 1");
  MatrixProvider p;
  p.kind_ = Kind::CosineXX;
  p.n_ = n;
  p.a_ = a;
  p.b_ = b;
  p.nu_ = nu;
  p.pp_scale_ = pp_scale;
  return p;
}

Mat MatrixProvider::operator()(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return value_;
    case Kind::Sampled:
      return interp(times_, values_, t);
    case Kind::CosineXX: {
      Mat m = Mat::Zero(2 * n_, 2 * n_);
      m.topLeftCorner(n_, n_) = pp_scale_ * Mat::Identity(n_, n_);
      m.bottomRightCorner(n_, n_) = (a_ + b_ * std::cos(nu_ * t)) * Mat::Identity(n_, n_);
      return m;
    }
  }
  throw std::logic_error("unreachable");
}

int MatrixProvider::rows() const {
  switch (kind_) {
    case Kind::Constant: return static_cast<int>(value_.rows());
    case Kind::Sampled: return static_cast<int>(values_.front().rows());
    case Kind::CosineXX: return 2 * n_;
  }
  throw std::logic_error("unreachable");
}

bool MatrixProvider::covers(double t0, double t1) const {
  if (kind_ != Kind::Sampled) return true;
  return times_.front() <= t0 && t1 <= times_.back();
}

VectorProvider VectorProvider::constant(Vec value) {
  if (value.size() < 1) throw std::invalid_argument("vector provider value must be non-empty");
  VectorProvider p;
  p.kind_ = Kind::Constant;
  p.value_ = std::move(value);
  return p;
}

VectorProvider VectorProvider::sampled(std::vector<double> times, std::vector<Vec> values) {
  check_knots(times, values.size());
  for (const Vec& v : values)
    if (v.size() != values.front().size())
      throw std::invalid_argument("sampled vector provider values must share one size");
  VectorProvider p;
  p.kind_ = Kind::Sampled;
  p.times_ = std::move(times);
  p.values_ = std::move(values);
  return p;
}

Vec VectorProvider::operator()(double t) const {
  if (kind_ == Kind::Constant) return value_;
  return interp(times_, values_, t);
}

int VectorProvider::size() const {
  return static_cast<int>(kind_ == Kind::Constant ? value_.size() : values_.front().size());
}

bool VectorProvider::covers(double t0, double t1) const {
  if (kind_ != Kind::Sampled) return true;
  return times_.front() <= t0 && t1 <= times_.back();
}

}  // namespace nlgpe
