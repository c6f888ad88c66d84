#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "nlgpe/fft.hpp"
#include "nlgpe/grid_state.hpp"
#include "nlgpe/moments.hpp"
#include "nlgpe/weyl_symbol.hpp"

using namespace nlgpe;

namespace {

HermiteGaussianState ground() {
  CMat Q(1, 1);
  Q << cplx(0, 1);
  return HermiteGaussianState::pure(1, 1.0, Q).normalized();
}

// Spectral application of the momentum operator on a sampled grid.
std::vector<cplx> grid_momentum(const GridState& gs) {
  std::vector<cplx> v = gs.values;
  Fft fft(1, gs.points);
  fft.forward(v);
  auto p = momentum_axis(gs);
  for (int i = 0; i < gs.points; ++i) v[i] *= p[i];
  fft.inverse(v);
  return v;
}

std::vector<cplx> grid_position(const GridState& gs) {
  std::vector<cplx> v = gs.values;
  for (int i = 0; i < gs.points; ++i) v[i] *= gs.axis(i);
  return v;
}

double rel_l2_diff(const GridState& gs, const std::vector<cplx>& ref) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < ref.size(); ++i) {
    num += std::norm(gs.values[i] - ref[i]);
    den += std::norm(ref[i]);
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

GridState sampled(const HermiteGaussianState& s) { return sample_to_grid(s, -16.0, 16.0, 1024, 0.0); }

WeylPolySymbol sym_x = WeylPolySymbol::position(1, 0);
WeylPolySymbol sym_p = WeylPolySymbol::momentum(1, 0);

}  // namespace

TEST_CASE("symbol factories") {
  CHECK(sym_x.poly.coeff({0, 1}) == cplx(1, 0));
  CHECK(sym_p.poly.coeff({1, 0}) == cplx(1, 0));
  CHECK(WeylPolySymbol::constant(2, cplx(2, 1)).poly.coeff({0, 0, 0, 0}) == cplx(2, 1));
  CHECK(WeylPolySymbol::position(2, 1).poly.coeff({0, 0, 0, 1}) == cplx(1, 0));
  CHECK(sym_x.degree() == 1);
}

TEST_CASE("linear symbols reproduce the elementary operations") {
  auto psi = ground();
  psi.mul_by_position(0);  // hermite content

  auto via_symbol = apply_symbol(sym_x, psi);
  auto direct = psi;
  direct.mul_by_position(0);
  CHECK(hermite_distance(via_symbol, direct) < 1e-14);

  auto via_p = apply_symbol(sym_p, psi);
  auto direct_p = psi;
  direct_p.apply_momentum(0);
  CHECK(hermite_distance(via_p, direct_p) < 1e-14);
}

TEST_CASE("weyl ordering of the mixed monomial p x") {
  WeylPolySymbol px{1, sym_p.poly * sym_x.poly};
  auto out = apply_symbol(px, ground());
  // (phat xhat + xhat phat)/2 on e^{-u^2/2} equals (i u^2 - i/2) e^{-u^2/2}
  CHECK(std::abs(out.poly.coeff({2}) * out.amplitude / ground().amplitude - cplx(0, 1)) < 1e-14);
  CHECK(std::abs(out.poly.coeff({0}) * out.amplitude / ground().amplitude - cplx(0, -0.5)) <
        1e-14);

  // grid oracle: symmetrized product applied spectrally
  auto psi = ground();
  GridState gs = sampled(psi);
  GridState xg = gs;
  xg.values = grid_position(gs);
  GridState pg = gs;
  pg.values = grid_momentum(gs);
  std::vector<cplx> ref(gs.total());
  auto px_of_x = grid_momentum(xg);
  auto x_of_p = grid_position(pg);
  for (size_t i = 0; i < ref.size(); ++i) ref[i] = 0.5 * (px_of_x[i] + x_of_p[i]);
  CHECK(rel_l2_diff(sampled(out), ref) < 1e-10);
}

TEST_CASE("quartic mixed symbol against the grid") {
  // a = p^2 x^2, Weyl-ordered: 2^{-2} sum_k C(2,k) phat^k xhat^2 phat^{2-k}
  WeylPolySymbol a{1, sym_p.poly * sym_p.poly * sym_x.poly * sym_x.poly};
  auto psi = ground();
  psi.mul_by_position(0);
  psi = psi.normalized();
  auto out = apply_symbol(a, psi);

  GridState gs = sampled(psi);
  auto word = [&](int k) {
    // phat^k xhat^2 phat^{2-k} acting right to left
    GridState w = gs;
    for (int j = 0; j < 2 - k; ++j) w.values = grid_momentum(w);
    w.values = grid_position(w);
    w.values = grid_position(w);
    for (int j = 0; j < k; ++j) w.values = grid_momentum(w);
    return w.values;
  };
  std::vector<cplx> ref(gs.total(), cplx(0, 0));
  const double c[3] = {1.0, 2.0, 1.0};
  for (int k = 0; k <= 2; ++k) {
    auto wk = word(k);
    for (size_t i = 0; i < ref.size(); ++i) ref[i] += 0.25 * c[k] * wk[i];
  }
  CHECK(rel_l2_diff(sampled(out), ref) < 1e-8);
}

TEST_CASE("2d symbol factors across dimensions") {
  CMat Q = CMat::Identity(2, 2) * cplx(0, 1);
  auto psi = HermiteGaussianState::pure(2, 1.0, Q).normalized();
  WeylPolySymbol a{2, WeylPolySymbol::momentum(2, 0).poly * WeylPolySymbol::position(2, 1).poly};
  auto out = apply_symbol(a, psi);
  // p1 acts as i u1 on the 2d ground state; x2 multiplies: i u1 u2 psi
  CHECK(std::abs(out.poly.coeff({1, 1}) * out.amplitude / psi.amplitude - cplx(0, 1)) < 1e-14);
  CHECK(out.poly.coeff({2, 0}) == cplx(0, 0));
}

TEST_CASE("transport pulls the symbol back along the flow") {
  // quarter rotation: x -> -p
  Mat rot(2, 2);
  rot << 0, -1, 1, 0;
  WeylPolySymbol moved = transport_symbol(sym_x, rot);
  CHECK(std::abs(moved.poly.coeff({1, 0}) - cplx(-1, 0)) < 1e-14);
  CHECK(std::abs(moved.poly.coeff({0, 1})) < 1e-14);

  // free flow at time t: x -> x - t p
  Mat freeL(2, 2);
  freeL << 1, 0, 0.7, 1;
  WeylPolySymbol freed = transport_symbol(sym_x, freeL);
  CHECK(std::abs(freed.poly.coeff({0, 1}) - cplx(1, 0)) < 1e-14);
  CHECK(std::abs(freed.poly.coeff({1, 0}) - cplx(-0.7, 0)) < 1e-14);

  CHECK_THROWS_AS(transport_symbol(sym_x, Mat::Ones(2, 2)), std::invalid_argument);
}

TEST_CASE("operator container composition order") {
  auto psi = ground();
  Vec mu(2);
  mu << 0.4, -0.2;
  StateOperator op = StateOperator::symbol_op(sym_x);
  op.displacement = PhasePoint{1, mu};
  op.scalar = cplx(2, 1);

  auto out = op.apply(psi);
  auto ref = psi;
  ref.mul_by_position(0);
  ref.displace({1, mu});
  ref.amplitude *= cplx(2, 1);
  CHECK(hermite_distance(out, ref) < 1e-14);

  auto ident = StateOperator::identity(1).apply(psi);
  CHECK(hermite_distance(ident, psi) < 1e-15);
}

TEST_CASE("frame conjugation is pointwise exact") {
  auto phi = ground();
  Vec z(2);
  z << 0.6, -0.9;
  const double S = 0.21;  // must drop out of the conjugation

  for (const StateOperator& op :
       {StateOperator::symbol_op(sym_x), StateOperator::symbol_op(sym_p),
        StateOperator::displacement_op({1, (Vec(2) << 0.3, 0.5).finished()})}) {
    StateOperator conj = op.conjugated_by_frame({1, z}, 1.0);
    auto lhs = conj.apply(phi);

    auto dressed = phi;
    dressed.from_frame({1, z}, S);
    auto rhs = op.apply(dressed);
    rhs.to_frame({1, z}, S);

    for (double u0 : {-0.8, 0.1, 1.2}) {
      Vec u(1);
      u << u0;
      CHECK(std::abs(lhs.evaluate(u) - rhs.evaluate(u)) < 1e-13);
    }
  }
}

TEST_CASE("heisenberg transport of a displacement") {
  Mat rot(2, 2);
  rot << 0, -1, 1, 0;
  Vec mu(2);
  mu << 0.5, 0.2;
  StateOperator op = StateOperator::displacement_op({1, mu});
  StateOperator moved = op.transported(rot);
  REQUIRE(moved.displacement.has_value());
  CHECK((moved.displacement->z - rot * mu).cwiseAbs().maxCoeff() < 1e-14);

  StateOperator symb = StateOperator::symbol_op(sym_x).transported(rot);
  REQUIRE(symb.symbol.has_value());
  CHECK(std::abs(symb.symbol->poly.coeff({1, 0}) - cplx(-1, 0)) < 1e-14);
}

TEST_CASE("normalization constants of reference operators") {
  auto g = ground();
  CHECK(normalization_constant(StateOperator::symbol_op(sym_x), g) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(normalization_constant(StateOperator::symbol_op(sym_p), g) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  Vec mu(2);
  mu << 0.0, 0.5;
  CHECK(normalization_constant(StateOperator::displacement_op({1, mu}), g) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // lowering symbol (x + i p)/sqrt(2) annihilates the ground state
  WeylPolySymbol lower{1, (sym_x.poly + sym_p.poly * I_UNIT) * (1.0 / std::sqrt(2.0))};
  CHECK_THROWS_AS(normalization_constant(StateOperator::symbol_op(lower), g), std::runtime_error);

  // raising symbol (x - i p)/sqrt(2) maps to the first excited state, norm 1
  WeylPolySymbol raise{1, (sym_x.poly - sym_p.poly * I_UNIT) * (1.0 / std::sqrt(2.0))};
  CHECK(normalization_constant(StateOperator::symbol_op(raise), g) ==
        doctest::Approx(1.0).epsilon(1e-12));
}
