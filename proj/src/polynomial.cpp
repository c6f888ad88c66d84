#include "nlgpe/polynomial.hpp"

#include <numeric>

namespace nlgpe {

MultiPoly MultiPoly::constant(int nvars, cplx c) {
  MultiPoly p(nvars);
  if (c != 0.0) p.terms_[std::vector<int>(nvars, 0)] = c;
  return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw std::invalid_argument("MultiPoly::variable: index out of range");
  MultiPoly p(nvars);
  std::vector<int> e(nvars, 0);
  e[i] = 1;
  p.terms_[e] = 1.0;
  return p;
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

cplx MultiPoly::coeff(const std::vector<int>& expo) const {
  auto it = terms_.find(expo);
  return it == terms_.end() ? cplx{0.0} : it->second;
}

void MultiPoly::set_coeff(const std::vector<int>& expo, cplx c) {
  if (static_cast<int>(expo.size()) != nvars_)
    throw std::invalid_argument("MultiPoly::set_coeff: exponent size mismatch");
  if (c == 0.0)
    terms_.erase(expo);
  else
    terms_[expo] = c;
}

void MultiPoly::add_term(const std::vector<int>& expo, cplx c) {
  auto it = terms_.find(expo);
  if (it == terms_.end()) {
    if (c != 0.0) terms_[expo] = c;
  } else {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  MultiPoly r = *this;
  r += o;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (nvars_ != o.nvars_) throw std::invalid_argument("MultiPoly: variable count mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + o * cplx{-1.0}; }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("MultiPoly: variable count mismatch");
  MultiPoly r(nvars_);
  std::vector<int> e(nvars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly MultiPoly::operator*(cplx s) const {
  MultiPoly r(nvars_);
  if (s == 0.0) return r;
  for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
  return r;
}

MultiPoly MultiPoly::derivative(int i) const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    std::vector<int> e2 = e;
    e2[i] -= 1;
    r.add_term(e2, c * static_cast<double>(e[i]));
  }
  return r;
}

MultiPoly MultiPoly::conjugated() const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_[e] = std::conj(c);
  return r;
}

MultiPoly MultiPoly::substitute_affine(const CMat& M, const CVec& c, int new_nvars) const {
  if (M.rows() != nvars_ || M.cols() != new_nvars || c.size() != nvars_)
    throw std::invalid_argument("MultiPoly::substitute_affine: shape mismatch");
  std::vector<MultiPoly> images;
  images.reserve(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    MultiPoly img = MultiPoly::constant(new_nvars, c(i));
    for (int j = 0; j < new_nvars; ++j)
      if (M(i, j) != 0.0) img += MultiPoly::variable(new_nvars, j) * M(i, j);
    images.push_back(std::move(img));
  }
  MultiPoly result(new_nvars);
  for (const auto& [e, coeff] : terms_) {
    MultiPoly term = MultiPoly::constant(new_nvars, coeff);
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) term = term * images[i];
    result += term;
  }
  return result;
}

cplx MultiPoly::evaluate(const CVec& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("MultiPoly::evaluate: size mismatch");
  cplx sum = 0.0;
  for (const auto& [e, c] : terms_) {
    cplx term = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) term *= point(i);
    sum += term;
  }
  return sum;
}

cplx MultiPoly::gaussian_expectation(const CVec& mean, const CMat& cov) const {
  if (mean.size() != nvars_ || cov.rows() != nvars_ || cov.cols() != nvars_)
    throw std::invalid_argument("MultiPoly::gaussian_expectation: shape mismatch");
  if (terms_.empty()) return 0.0;
  int deg = degree();
  if (deg == 0) return terms_.begin()->second;

  // Reduce on the first variable appearing in a non-constant monomial:
  // P = u_i * A + B with B free of that split, then apply Stein's identity to A.
  int i = -1;
  for (const auto& [e, c] : terms_) {
    for (int k = 0; k < nvars_; ++k)
      if (e[k] > 0) { i = k; break; }
    if (i >= 0) break;
  }
  MultiPoly A(nvars_), B(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] > 0) {
      std::vector<int> e2 = e;
      e2[i] -= 1;
      A.add_term(e2, c);
    } else {
      B.add_term(e, c);
    }
  }
  cplx result = mean(i) * A.gaussian_expectation(mean, cov) + B.gaussian_expectation(mean, cov);
  for (int j = 0; j < nvars_; ++j) {
    if (cov(i, j) == 0.0) continue;
    MultiPoly dA = A.derivative(j);
    if (!dA.is_zero()) result += cov(i, j) * dA.gaussian_expectation(mean, cov);
  }
  return result;
}

}  // namespace nlgpe
