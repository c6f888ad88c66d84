#pragma once

#include <map>
#include <vector>

#include "nlgpe/types.hpp"

namespace nlgpe {

/// Sparse multivariate polynomial with complex coefficients over real variables.
/// Exponent vectors are the map keys, so iteration order (and every derived
/// output) is deterministic.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  static MultiPoly constant(int nvars, cplx c);
  static MultiPoly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  int degree() const;  // max total degree, -1 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  cplx coeff(const std::vector<int>& expo) const;
  void set_coeff(const std::vector<int>& expo, cplx c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(cplx s) const;
  MultiPoly& operator+=(const MultiPoly& o);

  MultiPoly derivative(int i) const;
  MultiPoly conjugated() const;  // conjugates coefficients (variables are real)

  /// Substitute old variable i -> sum_j M(i,j) * new_var_j + c(i).
  /// M is (nvars x new_nvars), c has nvars entries.
  MultiPoly substitute_affine(const CMat& M, const CVec& c, int new_nvars) const;

  cplx evaluate(const CVec& point) const;

  /// Gaussian expectation E[P(u)] for u ~ N(mean, cov), via the recursion
  /// E[u_i Q] = mean_i E[Q] + sum_j cov(i,j) E[dQ/du_j].
  /// cov may be complex symmetric (analytic continuation of the Gaussian
  /// integral); exact for polynomials.
  cplx gaussian_expectation(const CVec& mean, const CMat& cov) const;

  const std::map<std::vector<int>, cplx>& terms() const { return terms_; }

 private:
  int nvars_ = 0;
  std::map<std::vector<int>, cplx> terms_;
  void add_term(const std::vector<int>& expo, cplx c);
};

}  // namespace nlgpe
