#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlgpe/coefficient_provider.hpp"
#include "nlgpe/quadratic_model.hpp"
#include "nlgpe/types.hpp"

using namespace nlgpe;

TEST_CASE("symplectic form structure") {
  Mat J = symplectic_form(1);
  CHECK(J(0, 0) == 0.0);
  CHECK(J(0, 1) == -1.0);
  CHECK(J(1, 0) == 1.0);
  CHECK(J(1, 1) == 0.0);

  for (int n : {1, 2}) {
    Mat Jn = symplectic_form(n);
    CHECK((Jn * Jn + Mat::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((Jn.transpose() + Jn).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(symplectic_form(0), std::invalid_argument);
}

TEST_CASE("phase point views are momentum-first") {
  Vec z(4);
  z << 1, 2, 3, 4;
  PhasePoint pt(2, z);
  CHECK(pt.momentum()(0) == 1.0);
  CHECK(pt.momentum()(1) == 2.0);
  CHECK(pt.position()(0) == 3.0);
  CHECK(pt.position()(1) == 4.0);
  CHECK_THROWS_AS(PhasePoint(2, Vec::Zero(3)), std::invalid_argument);
  CHECK(PhasePoint::zero(1).z.size() == 2);
}

TEST_CASE("constant providers return their value everywhere") {
  Mat A(2, 2);
  A << 1, 2, 2, 5;
  auto P = MatrixProvider::constant(A);
  CHECK(P.is_constant());
  CHECK((P(0.0) - A).cwiseAbs().maxCoeff() == 0.0);
  CHECK((P(137.5) - A).cwiseAbs().maxCoeff() == 0.0);
  CHECK(P.rows() == 2);
  CHECK(P.covers(-1e6, 1e6));

  Vec b(2);
  b << -1, 3;
  auto Pv = VectorProvider::constant(b);
  CHECK((Pv(2.0) - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK(Pv.size() == 2);
}

TEST_CASE("sampled providers interpolate linearly and honor their window") {
  Mat A = Mat::Zero(2, 2), B = Mat::Identity(2, 2) * 4.0;
  auto P = MatrixProvider::sampled({0.0, 1.0}, {A, B});
  CHECK((P(0.0) - A).cwiseAbs().maxCoeff() == 0.0);
  CHECK((P(1.0) - B).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((P(0.25) - 0.25 * B).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(P.covers(0.0, 1.0));
  CHECK_FALSE(P.covers(-0.1, 1.0));
  // RK4 stages may poke marginally past the last knot.
  CHECK_NOTHROW(P(1.0 + 1e-10));
  CHECK_THROWS_AS(P(2.0), std::out_of_range);
  CHECK_THROWS_AS(MatrixProvider::sampled({0.0}, {A, B}), std::invalid_argument);

  Vec u = Vec::Zero(2), v = Vec::Ones(2);
  auto Pv = VectorProvider::sampled({0.0, 2.0}, {u, v});
  CHECK((Pv(1.0) - 0.5 * v).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("cosine profile drives the position block only") {
  auto P = MatrixProvider::cosine_xx(1, 1.0, 0.1, 2.0, 1.0);
  Mat H0 = P(0.0);
  CHECK(H0(0, 0) == doctest::Approx(1.0));
  CHECK(H0(1, 1) == doctest::Approx(1.1));
  CHECK(H0(0, 1) == 0.0);
  Mat Hq = P(M_PI / 2);  // cos(pi) = -1
  CHECK(Hq(1, 1) == doctest::Approx(0.9));
  CHECK_FALSE(P.is_constant());

  Mat H2 = MatrixProvider::cosine_xx(2, 1.0, 0.5, 1.0, 2.0)(0.0);
  CHECK(H2.rows() == 4);
  CHECK(H2(0, 0) == doctest::Approx(2.0));
  CHECK(H2(1, 1) == doctest::Approx(2.0));
  CHECK(H2(2, 2) == doctest::Approx(1.5));
  CHECK(H2(3, 3) == doctest::Approx(1.5));
}

namespace {

QuadraticModel harmonic_s1() {
  QuadraticModel m = QuadraticModel::empty(1);
  m.kappa = 0.3;
  m.norm_squared = 2.0;
  m.t0 = 0.0;
  m.t1 = 10.0;
  m.Hzz = MatrixProvider::constant(Mat::Identity(2, 2));
  Mat Wxx = Mat::Zero(2, 2);
  Wxx(1, 1) = 1.0;
  m.Wzz = MatrixProvider::constant(Wxx);
  m.Wzw = MatrixProvider::constant(Wxx);
  m.Www = MatrixProvider::constant(Wxx);
  return m;
}

}  // namespace

TEST_CASE("model scalars and derived matrices") {
  QuadraticModel m = harmonic_s1();
  CHECK(m.kappa_tilde() == doctest::Approx(0.6));
  CHECK(validate_model(m).empty());

  Mat M = effective_linear_matrix(m, 0.0);
  CHECK(M(0, 0) == doctest::Approx(1.0));
  CHECK(M(1, 1) == doctest::Approx(1.6));
  CHECK(M(0, 1) == 0.0);

  Mat D = center_drive_matrix(m, 0.0);
  CHECK(D(1, 1) == doctest::Approx(2.2));
  CHECK(D(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("effective scalar hamiltonian value") {
  QuadraticModel m = harmonic_s1();
  Vec Hzv(2);
  Hzv << 0.3, -0.2;
  m.Hz = VectorProvider::constant(Hzv);
  Vec Z(2);
  Z << 1, 2;
  Mat D2(2, 2);
  D2 << 0.5, 0.1, 0.1, 0.7;
  // 1/2<Z,(Hzz + 0.6*(Wzz+2Wzw+Www))Z> = 1/2(1*1 + 3.4*4) = 7.3
  // <Hz,Z> = -0.1 ; 0.3*tr(Www D2) = 0.21
  CHECK(effective_hamiltonian(m, 0.0, Z, D2) == doctest::Approx(7.41).epsilon(1e-12));
}

TEST_CASE("model validation reports each violated invariant") {
  QuadraticModel m = harmonic_s1();
  m.hbar = 0.0;
  m.norm_squared = -1.0;
  CHECK(validate_model(m).size() == 2);  // scalar tier collects both

  QuadraticModel asym = harmonic_s1();
  Mat bad(2, 2);
  bad << 0, 1, 0, 0;
  asym.Wzz = MatrixProvider::constant(bad);
  auto diags = validate_model(asym);
  REQUIRE(diags.size() == 1);
  CHECK(diags.front().find("symmetric") != std::string::npos);

  QuadraticModel short_window = harmonic_s1();
  short_window.Hzz =
      MatrixProvider::sampled({0.0, 1.0}, {Mat::Identity(2, 2), Mat::Identity(2, 2)});
  short_window.t1 = 10.0;  // provider stops at 1
  CHECK_FALSE(validate_model(short_window).empty());

  QuadraticModel wrong_dim = harmonic_s1();
  wrong_dim.Hz = VectorProvider::constant(Vec::Zero(4));
  CHECK_FALSE(validate_model(wrong_dim).empty());
}
