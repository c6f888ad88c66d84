#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlgpe/hermite_gaussian.hpp"
#include "nlgpe/moments.hpp"

using namespace nlgpe;

namespace {

HermiteGaussianState ground() {
  CMat Q(1, 1);
  Q << cplx(0, 1);
  return HermiteGaussianState::pure(1, 1.0, Q).normalized();
}

// Riemann-sum bracket on a wide fine grid; independent of the closed forms.
cplx quad_bracket_1d(const HermiteGaussianState& a, const HermiteGaussianState& b,
                     const MultiPoly& weight) {
  const double L = 14.0;
  const int N = 8192;
  const double h = 2 * L / N;
  cplx acc = 0.0;
  Vec u(1);
  CVec uc(1);
  for (int i = 0; i < N; ++i) {
    u(0) = -L + i * h;
    uc(0) = u(0);
    acc += std::conj(a.evaluate(u)) * weight.evaluate(uc) * b.evaluate(u);
  }
  return acc * h;
}

cplx quad_bracket_2d(const HermiteGaussianState& a, const HermiteGaussianState& b) {
  const double L = 8.0;
  const int N = 384;
  const double h = 2 * L / N;
  cplx acc = 0.0;
  Vec u(2);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      u << -L + i * h, -L + j * h;
      acc += std::conj(a.evaluate(u)) * b.evaluate(u);
    }
  return acc * h * h;
}

}  // namespace

TEST_CASE("pure gaussian norm") {
  CMat Q(1, 1);
  Q << cplx(0, 1);
  auto psi = HermiteGaussianState::pure(1, 1.0, Q);
  // ||exp(-u^2/2)||^2 = sqrt(pi)
  CHECK(psi.norm_squared() == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(psi.normalized().norm() == doctest::Approx(1.0).epsilon(1e-12));

  // 2D with correlation
  CMat Q2(2, 2);
  Q2 << cplx(0, 1), cplx(0, 0.3), cplx(0, 0.3), cplx(0, 2);
  auto psi2 = HermiteGaussianState::pure(2, 1.0, Q2);
  cplx q = quad_bracket_2d(psi2, psi2);
  CHECK(psi2.norm_squared() == doctest::Approx(q.real()).epsilon(1e-8));
}

TEST_CASE("validation rejects malformed states") {
  CMat Q(1, 1);
  Q << cplx(0, -1);  // Im Q negative definite: not normalizable
  CHECK_THROWS_AS(HermiteGaussianState::pure(1, 1.0, Q).validate(), std::invalid_argument);

  CMat Qa(2, 2);
  Qa << cplx(0, 1), cplx(0.5, 0), cplx(0, 0), cplx(0, 1);  // not symmetric
  HermiteGaussianState bad;
  bad.n = 2;
  bad.Q = Qa;
  bad.ell = CVec::Zero(2);
  bad.poly = MultiPoly::constant(2, 1.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("centered construction carries the phase-space center") {
  Vec z(2);
  z << 0.3, -0.7;
  CMat Q(1, 1);
  Q << cplx(0, 1);
  auto psi = HermiteGaussianState::pure_centered(1, 1.0, Q, {1, z});
  // explicit formula at a probe point
  Vec u(1);
  u << 0.4;
  double du = u(0) - (-0.7);
  cplx expect = std::exp(I_UNIT * (0.5 * cplx(0, 1) * du * du + 0.3 * du));
  CHECK(std::abs(psi.evaluate(u) - expect) < 1e-14);

  MomentSet mom = gaussian_moments(psi.normalized());
  CHECK(mom.first(0) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(mom.first(1) == doctest::Approx(-0.7).epsilon(1e-12));
  // translation leaves the covariance of the ground state untouched
  CHECK(mom.second_centered(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mom.second_centered(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("momentum operator matches a finite difference") {
  auto psi = ground();
  psi.mul_by_position(0).mul_by_position(0);  // poly u^2: exercise the Hermite branch
  auto dpsi = psi;
  dpsi.apply_momentum(0);

  const double h = 1e-5;
  for (double u0 : {-0.9, 0.2, 1.3}) {
    Vec up(1), um(1), u(1);
    u << u0;
    up << u0 + h;
    um << u0 - h;
    cplx fd = -I_UNIT * (psi.evaluate(up) - psi.evaluate(um)) / (2 * h);
    CHECK(std::abs(dpsi.evaluate(u) - fd) < 1e-8);
  }
}

TEST_CASE("elementary operations act pointwise as documented") {
  auto psi = ground();
  Vec u(1);
  u << 0.7;

  auto xpsi = psi;
  xpsi.mul_by_position(0);
  CHECK(std::abs(xpsi.evaluate(u) - 0.7 * psi.evaluate(u)) < 1e-15);

  auto sh = psi;
  Vec d(1);
  d << 0.4;
  sh.shift_argument(d);
  Vec ud(1);
  ud << 1.1;
  CHECK(std::abs(sh.evaluate(u) - psi.evaluate(ud)) < 1e-14);

  auto ph = psi;
  Vec b(1);
  b << -0.6;
  ph.add_momentum_phase(b);
  CHECK(std::abs(ph.evaluate(u) - std::exp(I_UNIT * (-0.6) * 0.7) * psi.evaluate(u)) < 1e-14);

  auto mp = psi;
  mp.mul_phase(cplx(0.25, 0.0));
  CHECK(std::abs(mp.evaluate(u) - std::exp(I_UNIT * 0.25) * psi.evaluate(u)) < 1e-14);

  // displacement: (D(mu) psi)(u) = e^{i<mu_p, u - mu_x/2>} psi(u - mu_x)
  auto dp = psi;
  Vec mu(2);
  mu << 0.3, -0.5;
  dp.displace({1, mu});
  Vec shifted(1);
  shifted << 0.7 - (-0.5);
  cplx expect = std::exp(I_UNIT * 0.3 * (0.7 - (-0.5) / 2)) * psi.evaluate(shifted);
  CHECK(std::abs(dp.evaluate(u) - expect) < 1e-14);
  CHECK(dp.norm() == doctest::Approx(psi.norm()).epsilon(1e-12));  // unitary
}

TEST_CASE("frame dressing round trip and formula") {
  auto psi = ground();
  psi.mul_by_position(0);  // non-trivial polynomial content
  Vec z(2);
  z << 0.8, -0.3;
  const double S = 0.37;

  auto dressed = psi;
  dressed.from_frame({1, z}, S);
  Vec xpt(1);
  xpt << 0.5;
  Vec upt(1);
  upt << 0.5 - (-0.3);
  cplx expect = std::exp(I_UNIT * (S + 0.8 * (0.5 - (-0.3)))) * psi.evaluate(upt);
  CHECK(std::abs(dressed.evaluate(xpt) - expect) < 1e-14);

  auto back = dressed;
  back.to_frame({1, z}, S);
  for (double u0 : {-1.2, 0.0, 0.9}) {
    Vec u(1);
    u << u0;
    CHECK(std::abs(back.evaluate(u) - psi.evaluate(u)) < 1e-13);
  }
}

TEST_CASE("brackets agree with quadrature") {
  auto a = ground();
  CMat Qb(1, 1);
  Qb << cplx(0.4, 2.0);
  auto b = HermiteGaussianState::pure(1, 1.0, Qb);
  b.ell = CVec::Constant(1, cplx(0.3, 0.1));
  b.amplitude = cplx(0.7, -0.2);
  b.mul_by_position(0);  // Hermite factor

  MultiPoly w = MultiPoly::variable(1, 0) * MultiPoly::variable(1, 0);  // weight u^2
  cplx closed = hermite_bracket(a, b, w);
  cplx quad = quad_bracket_1d(a, b, w);
  CHECK(std::abs(closed - quad) < 1e-9);

  cplx inner_closed = hermite_inner(a, b);
  cplx inner_quad = quad_bracket_1d(a, b, MultiPoly::constant(1, 1.0));
  CHECK(std::abs(inner_closed - inner_quad) < 1e-9);

  double dist = hermite_distance(a, b);
  double dist_quad = std::sqrt(std::abs(quad_bracket_1d(a, a, MultiPoly::constant(1, 1.0)) -
                                        2.0 * inner_quad.real() +
                                        quad_bracket_1d(b, b, MultiPoly::constant(1, 1.0))));
  CHECK(dist == doctest::Approx(dist_quad).epsilon(1e-7));
  CHECK(hermite_distance(a, a) < 1e-12);
}

TEST_CASE("2d bracket with correlated squeeze") {
  CMat Qa = CMat::Identity(2, 2) * cplx(0, 1);
  auto a = HermiteGaussianState::pure(2, 1.0, Qa);
  CMat Qb(2, 2);
  Qb << cplx(0.2, 2.0), cplx(0, 0.3), cplx(0, 0.3), cplx(0, 1.0);
  auto b = HermiteGaussianState::pure(2, 1.0, Qb);
  b.mul_by_position(1);
  cplx closed = hermite_inner(a, b);
  cplx quad = quad_bracket_2d(a, b);
  CHECK(std::abs(closed - quad) < 5e-7);
}

TEST_CASE("closed-form second moments of reference states") {
  // ground: diag(1/2, 1/2)
  MomentSet g = gaussian_moments(ground());
  CHECK((g.second_centered - 0.5 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  // Q = 2i: |psi|^2 ~ e^{-2u^2} -> <x^2> = 1/4, <p^2> = 1
  CMat Q(1, 1);
  Q << cplx(0, 2);
  MomentSet sq = gaussian_moments(HermiteGaussianState::pure(1, 1.0, Q).normalized());
  CHECK(sq.second_centered(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sq.second_centered(1, 1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(sq.second_centered(0, 1)) < 1e-12);

  // Q = 1 + 2i: <x^2> = 1/4, <p^2> = |Q|^2 <x^2> = 5/4, sym cross = Re(Q) <x^2>
  Q(0, 0) = cplx(1, 2);
  MomentSet ch = gaussian_moments(HermiteGaussianState::pure(1, 1.0, Q).normalized());
  CHECK(ch.second_centered(0, 0) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(ch.second_centered(1, 1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(ch.second_centered(0, 1) == doctest::Approx(0.25).epsilon(1e-12));

  // first excited state x|0> (normalized): diag(3/2, 3/2)
  auto h1 = ground();
  h1.mul_by_position(0);
  MomentSet e = gaussian_moments(h1.normalized());
  CHECK(e.second_centered(0, 0) == doctest::Approx(1.5).epsilon(1e-11));
  CHECK(e.second_centered(1, 1) == doctest::Approx(1.5).epsilon(1e-11));
  CHECK(e.norm_squared == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("norms of ladder images on the ground state") {
  auto g = ground();
  auto xg = g;
  xg.mul_by_position(0);
  CHECK(xg.norm() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  auto pg = g;
  pg.apply_momentum(0);
  CHECK(pg.norm() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("principal inverse square root of a determinant") {
  CMat G = CMat::Identity(2, 2);
  CHECK(std::abs(gaussian_sqrt_det_inv(G) - cplx(1, 0)) < 1e-14);
  G(0, 0) = 4.0;
  CHECK(std::abs(gaussian_sqrt_det_inv(G) - cplx(0.5, 0)) < 1e-14);

  CMat G1(1, 1);
  G1 << cplx(1, 1);
  // (1+i)^{-1/2} = 2^{-1/4} e^{-i pi/8}
  cplx expect = std::pow(2.0, -0.25) * std::exp(-I_UNIT * (M_PI / 8));
  CHECK(std::abs(gaussian_sqrt_det_inv(G1) - expect) < 1e-12);
}
