#include <cmath>

#include "doctest.h"
#include "dkpew/errors.hpp"
#include "dkpew/hyperkahler.hpp"
#include "dkpew/sampling.hpp"

using namespace dkpew;
using doctest::Approx;

namespace {

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

const JetEvaluator kBump = [](const std::array<Jet3, 3>& a) { return a[0] * a[0] * a[1] + cos(a[2]); };

SolutionSpec line_solution() {
  // u = x - y^2/2 solves dKP with u_x = 1
  return SolutionSpec::custom(
      [](const std::array<Jet3, 3>& a) { return a[0] - 0.5 * a[1] * a[1]; }, nullptr, "x - y^2/2");
}

}  // namespace

TEST_CASE("metric entries read off the construction") {
  const SolutionSpec s = make_family(Family::ConformalEinstein, {Poly1({1.0}), Poly1({0.5})});
  for (Point4 p : {Point4{0, 0, 0, 0}, Point4{1, -1, 0.5, 2}}) {
    const Mat4 g = metric_from_dkp(s, p);
    const Jet3 u = s.jet(spatial(p), 1);
    const double ux = u.d(kX), uy = u.d(kY);
    CHECK(g(kZ4, kZ4) == Approx(-2.0 / ux));
    CHECK(g(kX4, kT4) == Approx(-ux));
    CHECK(g(kY4, kY4) == Approx(ux / 2 - ux / 2));
    CHECK(g(kT4, kT4) == Approx(-2 * ux * u.value() - 2 * uy * uy / ux));
    CHECK(g(kZ4, kX4) == 0.0);
    CHECK(max_abs(g - g.transpose()) == 0.0);
  }
  CHECK_THROWS_AS(metric_from_dkp(zero_solution(), {1, 1, 1, 1}), DegenerateError);
}

TEST_CASE("metric and tetrad assemble the same tensor") {
  const SolutionSpec ce = make_family(Family::ConformalEinstein, {Poly1({1.0})});
  CHECK(max_abs(metric_from_dkp(ce, {0, 0, 0, 0}) - metric_from_tetrad(tetrad(ce, {0, 0, 0, 0}))) < 1e-12);
  Rng rng(4);
  for (Family fam : kExactFamilies) {
    const SolutionSpec s = make_family(fam, random_params(fam, rng));
    for (const Point4& p : random_points4(rng, 20, default_box(fam)))
      CHECK(max_abs(metric_from_dkp(s, p) - metric_from_tetrad(tetrad(s, p))) < 1e-12);
  }
}

TEST_CASE("flat example pulls back to a constant metric") {
  // 2 dX dt + 2 dz dY with dX dt = (dX dt + dt dX) / 2
  Mat4 want = Mat4::Zero();
  want(0, 2) = want(2, 0) = 1.0;
  want(1, 3) = want(3, 1) = 1.0;
  for (Point4 p : {Point4{0.3, 0.1, 1.5, 0.2}, Point4{-1, 2, 0.7, -0.4}, Point4{2, 0, 3, 1}})
    CHECK(max_abs(flat_example_pullback(p) - want) < 1e-12);
}

TEST_CASE("self-dual forms") {
  Rng rng(6);
  for (Family fam : kExactFamilies) {
    const SolutionSpec s = make_family(fam, random_params(fam, rng));
    for (const Point4& p : random_points4(rng, 10, default_box(fam))) {
      const SdForms f = sd_forms(s, p);
      CHECK(f.s00.get({kZ4, kT4}) == 1.0);
      CHECK(f.s00.max_abs() == 1.0);
      CHECK(wedge_identity_residual(f) < 1e-12);
    }
  }
}

TEST_CASE("closure of the self-dual forms") {
  Rng rng(8);
  for (Family fam : kExactFamilies) {
    CAPTURE(family_name(fam));
    const SolutionSpec s = make_family(fam, random_params(fam, rng));
    for (const Point4& p : random_points4(rng, 5, default_box(fam))) {
      CHECK(closure_residual(s, SdForm::S00, p) < 1e-14);
      CHECK(closure_residual(s, SdForm::S01, p) < 1e-6);
      CHECK(closure_residual(s, SdForm::S11, p) < 1e-6);
    }
  }
}

TEST_CASE("closure fails exactly where dKP fails") {
  const SolutionSpec on = make_family(Family::NoKilling, {Poly1({0.2, 0.1})});
  const SolutionSpec off = on.perturbed(0.1, kBump);
  Rng rng(10);
  for (const Point4& p : random_points4(rng, 10)) {
    const bool closed = closure_residual(off, SdForm::S01, p) < 1e-6 &&
                        closure_residual(off, SdForm::S11, p) < 1e-6;
    CHECK(closed == (std::abs(dkp_residual(off, spatial(p))) < 1e-6));
    CHECK(closure_residual(off, SdForm::S11, p) > 1e-3);
    CHECK(closure_residual(on, SdForm::S11, p) < 1e-6);
  }
}

TEST_CASE("canonical monopole") {
  Rng rng(12);
  for (Family fam : kExactFamilies) {
    CAPTURE(family_name(fam));
    const SolutionSpec s = make_family(fam, random_params(fam, rng));
    const Monopole m = canonical_monopole(s);
    for (const Point3& p : random_points(rng, 10, default_box(fam))) {
      for (double r : monopole_residual(s, m, p)) CHECK(std::abs(r) < 1e-6);
      CHECK(std::abs(linearized_dkp_apply(s, m.V, p)) < 1e-8);
    }
  }

  const SolutionSpec line = line_solution();
  const Monopole m = canonical_monopole(line);
  const Point3 p{0.4, 1.5, 0.8};
  const auto a = m.alpha(p);
  CHECK(a[1].value() == Approx(-0.5));
  CHECK(a[2].value() == Approx(1.5));
  CHECK(a[2].d(kY) - a[1].d(kT) == Approx(1.0));
  for (double r : monopole_residual(line, m, p)) CHECK(std::abs(r) < 1e-12);

  const Monopole none{[](const Point3&) { return Jet3::constant(0.0, 2); },
                      [](const Point3&) {
                        return std::array<Jet3, 3>{Jet3::constant(0.0, 2), Jet3::constant(0.0, 2),
                                                   Jet3::constant(0.0, 2)};
                      }};
  for (double r : monopole_residual(line, none, p)) CHECK(r == 0.0);
}

TEST_CASE("linearized dKP on the flat background") {
  const SolutionSpec z = zero_solution();
  // V = sin(x + a y + a^2 t) solves V_yy = V_xt
  const auto wave = [](const Point3& p) {
    const double a = 0.7;
    return sin(Jet3::variable(kX, p[0], 2) + a * Jet3::variable(kY, p[1], 2) +
               a * a * Jet3::variable(kT, p[2], 2));
  };
  for (Point3 p : {Point3{0.1, 0.2, 0.3}, Point3{2, -1, 0.5}})
    CHECK(std::abs(linearized_dkp_apply(z, wave, p)) < 1e-14);
  CHECK(linearized_dkp_apply(z, [](const Point3&) { return Jet3::constant(1.0, 2); }, {1, 1, 1}) == 0.0);
}

TEST_CASE("V h - (dz + alpha)^2 / V is scalar-flat for a non-canonical monopole") {
  // u = 0, V = 2 + 0.3 sin(x + y + t), alpha = -(V - 2)(dy + 2 dt): dalpha = *(dV)
  const auto V = [](const Point3& p) {
    return 2.0 + 0.3 * sin(Jet3::variable(kX, p[0], 2) + Jet3::variable(kY, p[1], 2) +
                           Jet3::variable(kT, p[2], 2));
  };
  const Monopole m{V, [V](const Point3& p) {
                     const Jet3 w = V(p) - 2.0;
                     return std::array<Jet3, 3>{Jet3::constant(0.0, 2), -w, -2.0 * w};
                   }};
  const SolutionSpec z = zero_solution();
  for (Point3 p : {Point3{0.2, 0.4, 0.1}, Point3{1.3, -0.6, 0.9}}) {
    for (double r : monopole_residual(z, m, p)) CHECK(std::abs(r) < 1e-12);
    CHECK(std::abs(linearized_dkp_apply(z, V, p)) < 1e-14);
  }
  const MetricFn<4> g = [&](const Vec4& q) {
    const Point3 p{q[0], q[1], q[2]};
    const double v = V(p).value();
    const auto a = m.alpha(p);
    const Vec4 th(a[0].value(), a[1].value(), a[2].value(), 1.0);
    Mat4 h = Mat4::Zero();
    h(kY4, kY4) = 1.0;
    h(kX4, kT4) = h(kT4, kX4) = -2.0;
    return Mat4(v * h - th * th.transpose() / v);
  };
  for (Vec4 q : {Vec4(0.2, 0.4, 0.1, 0.0), Vec4(1.3, -0.6, 0.9, 0.5)}) {
    const auto c = curvature_fd<4>(g, q);
    CHECK(std::abs(c.scalar) < 1e-5);
  }
}

TEST_CASE("Jones-Tod reduction recovers the dKP Weyl structure") {
  CHECK(jones_tod_expected_factor(2.0) == -1.0);
  Rng rng(14);
  for (Family fam : kExactFamilies) {
    CAPTURE(family_name(fam));
    const SolutionSpec s = make_family(fam, random_params(fam, rng));
    for (const Point3& p : random_points(rng, 10, default_box(fam))) {
      const JonesTodResult r = jones_tod_reduce(s, p);
      CHECK(r.factor == Approx(jones_tod_expected_factor(s.jet(p, 1).d(kX))).epsilon(1e-10));
      CHECK(r.proportionality_gap < 1e-10);
      CHECK(r.nu_gauge_gap < 1e-6);
    }
  }
  const JonesTodResult f = jones_tod_reduce(make_family(Family::Flat, {}), {1, 1, 2});
  CHECK(f.nu_gauge_gap < 1e-6);
  CHECK_THROWS_AS(jones_tod_reduce(zero_solution(), {1, 1, 1}), DegenerateError);
}

TEST_CASE("null Killing vector metric") {
  const Poly1 zero, quad({0.3, -0.5, 0.8});
  for (Point4 p : {Point4{0.2, 0.5, -0.3, 1.0}, Point4{1.1, -0.4, 0.6, 0.2}}) {
    const NullKvResult a = null_kv_metric(zero, p);
    CHECK(a.ricci_max < 1e-6);
    const NullKvResult b = null_kv_metric(quad, p);
    CHECK(b.ricci_max < 1e-6);
    CHECK(b.g(3, 3) == 0.0);
    // symmetric product: dz dy = (dz dy + dy dz) / 2
    CHECK(b.g(2, 3) == 0.5);
    CHECK(b.g(2, 2) == Approx(p[1] - quad(p[0])));
  }
}
