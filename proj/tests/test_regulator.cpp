#include "doctest.h"
#include "modreg/regulator.hpp"
#include "modular_oracles.hpp"
#include "oracles.hpp"

using namespace modreg;
using namespace modreg::regulator;
using mpfield::Complex;
using mpfield::Real;
using mpfield::pow2;
using units::CrossRatioUnit;
using units::Mat2;
using units::UnitExpr;

namespace {
using P = std::pair<long, long>;
CrossRatioUnit cr(long N, P a, P b, P c, P d) { return units::make_cross_ratio(N, {a, b, c, d}); }
}

TEST_CASE("logabs expansion: trivial unit, leading slope, pointwise oracle") {
  long N = 7;
  Context ctx(N, 30);
  // g_a / g_a
  UnitExpr triv;
  triv.N = N;
  CHECK(ctx.logabs_expansion(triv, Side::Infinity).eval(Real(2L)).is_zero());

  CrossRatioUnit u = cr(N, {0, 1}, {0, 2}, {0, 3}, {1, 0});
  UnitExpr v = units::cross_ratio_as_units(u);
  classp::PHalf h = ctx.logabs_expansion(v, Side::Infinity);
  // slope = -2 pi sum e_x B2(x1/N)/2
  mpq_class mu = 0;
  for (auto& [k, e] : v.e) mu += e * mpfield::bernoulli_poly2(mpq_class(k.first, N)) / 2;
  CHECK(abs(h.at(1, 0) - Complex(-mpfield::two_pi() * Real(mu))) < pow2(-170));
  // pointwise against the literal products at y = 2
  auto pd = modular_oracles::unit_point_data(v, Real(2L), 80);
  CHECK(abs(h.eval(Real(2L)) - Complex(pd.logabs)) < Real(1e-38));
  // and on the 0 side at y = 1.4 (i.e. the function at i / 1.4)
  classp::PHalf h0 = ctx.logabs_expansion(v, Side::Zero);
  UnitExpr vs = units::unit_slash(v, units::mat_sigma());
  auto pd0 = modular_oracles::unit_point_data(vs, Real(1.4), 80);
  CHECK(abs(h0.eval(Real(1.4)) - Complex(pd0.logabs)) < Real(1e-38));
}

TEST_CASE("darg and dlogabs expansions against analytic and finite differences") {
  long N = 7;
  Context ctx(N, 30);
  CrossRatioUnit u = cr(N, {0, 1}, {0, 2}, {1, 3}, {2, 0});
  UnitExpr v = units::cross_ratio_as_units(u);
  classp::PHalf da = ctx.darg_expansion(v, Side::Infinity);
  classp::PHalf dl = ctx.dlogabs_expansion(v, Side::Infinity);
  Real y(1.7);
  auto pd = modular_oracles::unit_point_data(v, y, 90);
  CHECK(abs(da.eval(y) - Complex(pd.darg)) < Real(1e-38));
  CHECK(abs(dl.eval(y) - Complex(pd.dlogabs)) < Real(1e-38));
  // finite differences of log|W| from the oracle side
  Real h = pow2(-50);
  auto lo = modular_oracles::unit_point_data(v, y - h, 90);
  auto hi = modular_oracles::unit_point_data(v, y + h, 90);
  Real fd = (hi.logabs - lo.logabs) * Real(0.5) / h;
  CHECK(abs(dl.eval(y) - Complex(fd)) < pow2(-80));
  // a pure q-power has zero d arg along iy
  UnitExpr claw;
  claw.N = N;
  CHECK(ctx.darg_expansion(claw, Side::Infinity).eval(y).is_zero());
}

TEST_CASE("bloch-wigner expansion: pointwise, constant rule") {
  long N = 7;
  Context ctx(N, 32);
  for (auto quad : {cr(N, {0, 1}, {0, 2}, {0, 3}, {1, 0}), cr(N, {0, 1}, {0, 3}, {1, 2}, {2, 0})}) {
    classp::PHalf D = ctx.bloch_wigner_expansion(quad, Side::Infinity);
    for (double yd : {1.5, 2.25}) {
      Real y(yd);
      Complex zu = modular_oracles::cross_ratio_value(quad, Complex(Real(0L), y), 90);
      Real expect = mpfield::bloch_wigner(zu);
      CHECK(abs(D.eval(y) - Complex(expect)) < Real(1e-30));
    }
    // constant term is D(u(i oo))
    auto cv = units::cusp_value(quad, Mat2{1, 0, 0, 1}, 1);
    Real expect_const = cv.kind == 0 ? mpfield::bloch_wigner(cv.value) : Real(0L);
    CHECK(abs(D.at(0, 0) - Complex(expect_const)) < pow2(-150));
  }
}

TEST_CASE("svp expansion: weight 2 is i D, pointwise for m = 3, 4") {
  long N = 7;
  Context ctx(N, 30);
  CrossRatioUnit u = cr(N, {0, 1}, {0, 2}, {0, 3}, {1, 0});
  classp::PHalf D = ctx.bloch_wigner_expansion(u, Side::Infinity);
  classp::PHalf L2 = ctx.svp_expansion(u, 2, Side::Infinity);
  Real y(1.2);
  CHECK(abs(L2.eval(y) - mpfield::times_i(D.eval(y))) < pow2(-150));
  for (long m : {3L, 4L}) {
    classp::PHalf Lm = ctx.svp_expansion(u, m, Side::Infinity);
    Complex zu = modular_oracles::cross_ratio_value(u, Complex(Real(0L), y), 90);
    CHECK(abs(Lm.eval(y) - mpfield::svp(m, zu)) < Real(1e-28));
  }
}

namespace {
UnitExpr quotient_unit(long N, long b, long a) {
  UnitExpr v;
  v.N = N;
  v.phase_exact = false;
  v.add_term(units::canonical_pm(N, 0, b), 1);
  v.add_term(units::canonical_pm(N, 0, a), -1);
  return v;
}
}

TEST_CASE("r32 form: zero tensor factor, pointwise oracle, side consistency") {
  long N = 7;
  Context ctx(N, 32);
  CrossRatioUnit u = cr(N, {0, 1}, {0, 2}, {0, 3}, {1, 0});
  UnitExpr vzero;
  vzero.N = N;
  auto F0 = ctx.r32_form(mpq_class(1), u, vzero, Mat2{});
  CHECK(F0.phi.eval(Real(1.3)).is_zero());

  UnitExpr v = quotient_unit(N, 3, 1);
  for (Mat2 g : {Mat2{1, 0, 0, 1}, Mat2{2, 1, 1, 1}}) {
    auto F = ctx.r32_form(mpq_class(1), u, v, g);
    // pointwise against the product-evaluation oracle on both sides
    CrossRatioUnit ug = units::slash(u, g);
    UnitExpr vg = units::unit_slash(v, g);
    for (double yd : {0.9, 1.6, 2.7}) {
      Real y(yd);
      Complex direct = modular_oracles::rn2_point(ug, vg, 3, y, 110);
      CHECK(abs(F.phi.eval(y) - direct) < Real(1e-30));
    }
    // the two independently built sides describe one function at y = 1
    CHECK(abs(F.phi.inf.eval(Real(1L)) - F.phi.zero.eval(Real(1L))) < Real(1e-34));
    // integrable by construction
    CHECK(F.phi.integrable());
  }
}

TEST_CASE("rn2 form: n=4 and n=5 pointwise oracles") {
  long N = 7;
  Context ctx(N, 30);
  CrossRatioUnit u = cr(N, {0, 1}, {0, 2}, {1, 3}, {2, 0});
  UnitExpr v = quotient_unit(N, 3, 1);
  REQUIRE(!v.e.empty());
  for (long n : {4L, 5L}) {
    auto F = ctx.rn2_form(mpq_class(1), u, v, Mat2{}, n);
    for (double yd : {1.1, 1.9}) {
      Real y(yd);
      Complex direct = modular_oracles::rn2_point(u, v, n, y, 110);
      CHECK(abs(F.phi.eval(y) - direct) < Real(1e-25));
    }
    CHECK(F.phi.integrable());
  }
  CHECK_THROWS(ctx.rn2_form(mpq_class(1), u, v, Mat2{}, 6));
}

TEST_CASE("integrals: empty cycle, orientation reversal, mellin vs quadrature") {
  long N = 7;
  Context ctx(N, 32);
  wedge::Group G = wedge::group_gamma1(N);
  wedge::MotivicCocycle xi = wedge::build_xi(G, {0, 1}, {0, 3});
  REQUIRE(!xi.terms.empty());

  Cycle empty;
  auto r0 = ctx.integrate_cycle(xi, empty);
  CHECK(r0.value.is_zero());

  // {sigma 0, sigma oo} = {oo, 0}: reversing the symbol flips the sign
  auto rid = ctx.integrate_symbol(xi, Mat2{1, 0, 0, 1});
  auto rsig = ctx.integrate_symbol(xi, units::mat_sigma());
  CHECK(abs(Complex(rid.value, rid.imag_residual * 0) + Complex(rsig.value)) <
        max(Real(1e-26), rid.tail_bound + rsig.tail_bound) + abs(Complex(rid.imag_residual)) +
            abs(Complex(rsig.imag_residual)));

  // single-term integral against tanh-sinh quadrature of the direct evaluator
  auto& t = xi.terms.front();
  UnitExpr v;
  v.N = N;
  v.phase_exact = false;
  v.e = t.v.e;
  auto F = ctx.r32_form(t.m, t.u, v, Mat2{});
  auto mv = classp::mellin_value(F.phi);
  CrossRatioUnit ug = t.u;
  Real mq(t.m);
  auto phi_inf = [&](const Real& y) {
    return (modular_oracles::rn2_point(ug, v, 3, y, 150) * mq).re;
  };
  CrossRatioUnit us = units::slash(t.u, units::mat_sigma());
  UnitExpr vs = units::unit_slash(v, units::mat_sigma());
  auto phi_zero = [&](const Real& u_) {
    // phi(1/u) = -u^2 A_sigma(u)
    return (modular_oracles::rn2_point(us, vs, 3, u_, 150) * mq).re * (u_ * u_) * Real(-1L) /
           (u_ * u_);
  };
  // int_0^1 phi dy = int_1^oo phi(1/u) u^{-2} du = -int_1^oo A_sigma(u) du
  Real total(0L);
  std::vector<double> edges{1.0, 3.0, 9.0, 27.0, 81.0, 7 * 36 * 2.303 / 6.283 + 5};
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    total += oracles::tanh_sinh(phi_inf, Real(edges[i]), Real(edges[i + 1]), pow2(-120));
    total -= oracles::tanh_sinh(
        [&](const Real& uu) { return (modular_oracles::rn2_point(us, vs, 3, uu, 150) * mq).re; },
        Real(edges[i]), Real(edges[i + 1]), pow2(-120));
  }
  (void)phi_zero;
  CHECK(abs(mv.value - Complex(total)) < Real(1e-28));
}
