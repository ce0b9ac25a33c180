#include <cmath>
#include <complex>

#include "doctest.h"
#include "dkpew/errors.hpp"
#include "dkpew/minitwistor.hpp"
#include "dkpew/sampling.hpp"

using namespace dkpew;
using doctest::Approx;

namespace {

using cd = std::complex<double>;

Jet3 zero_jet(int order) { return Jet3::constant(0.0, order); }

// slot of (a, b) in kPiPairs
int slot(int a, int b) {
  for (int i = 0; i < 6; ++i)
    if (kPiPairs[i][0] == a && kPiPairs[i][1] == b) return i;
  return -1;
}

bool has_root(const Intersection& r, cd want) {
  for (cd l : r.lambda)
    if (std::abs(l - want) < 1e-12) return true;
  return false;
}

}  // namespace

TEST_CASE("Pi for u = w = 0") {
  const PiForm pi = build_pi(zero_jet(1), zero_jet(1));
  const Laurent<double>& xl = pi[slot(0, 3)];
  const Laurent<double>& yl = pi[slot(1, 3)];
  const Laurent<double>& tl = pi[slot(2, 3)];
  CHECK(xl.coeff(0) == 1.0);
  CHECK(yl.coeff(1) == 1.0);
  CHECK(yl.coeff(0) == 0.0);
  CHECK(tl.coeff(2) == 1.0);
  CHECK(tl.coeff(1) == 0.0);
  for (int s : {slot(0, 1), slot(0, 2), slot(1, 2)})
    for (int k = pi[s].floor(); k <= pi[s].top(); ++k) CHECK(pi[s].coeff(k) == 0.0);
}

TEST_CASE("Pi is closed and Pi^Pi has degree at most 4") {
  Rng rng(3);
  for (Family fam : kExactFamilies) {
    const SolutionSpec s = make_family(fam, random_params(fam, rng));
    for (const Point3& p : random_points(rng, 3, default_box(fam))) {
      const Jet3 u = s.jet(p, 2), w = potential_w(s, p, 2);
      CHECK(pi_closure_residual(u, w) < 1e-10);
      const Laurent<double> pp = pi_wedge_pi(build_pi(u, w));
      for (int k = 5; k <= pp.top(); ++k) CHECK(pp.coeff(k) == 0.0);
    }
  }
  // off-shell data is still closed
  const Jet3 x = Jet3::variable(kX, 0.4, 2), y = Jet3::variable(kY, -0.3, 2), t = Jet3::variable(kT, 1.2, 2);
  CHECK(pi_closure_residual(x * y * t, sin(x) * t) < 1e-12);
}

TEST_CASE("simplicity obstructions") {
  CHECK(simplicity_residual(zero_jet(1), zero_jet(1)) == std::array<double, 2>{0.0, 0.0});

  const Point3 p{1.7, 0.4, 0.9};
  const Jet3 ux = Jet3::variable(kX, p[0], 1);
  const auto r = simplicity_residual(ux, zero_jet(1));
  CHECK(r[0] == 0.0);
  CHECK(r[1] == Approx(-p[0]));

  // Pi^Pi = 2[(u_t - u u_x - w_y) + l (w_x - u_y)]
  const Jet3 x = Jet3::variable(kX, 0.4, 1), y = Jet3::variable(kY, -0.3, 1), t = Jet3::variable(kT, 1.2, 1);
  const Jet3 u = x * y + t, w = x * x - y * t;
  const auto s = simplicity_residual(u, w);
  const Laurent<double> pp = pi_wedge_pi(build_pi(u, w));
  CHECK(pp.coeff(0) == Approx(2 * s[1]));
  CHECK(pp.coeff(1) == Approx(2 * s[0]));
  CHECK(s[0] == Approx(2 * 0.4 - 0.4));
  CHECK(s[1] == Approx(1 - (0.4 * -0.3 + 1.2) * -0.3 + 1.2));
}

TEST_CASE("exact families with their potential are simple") {
  Rng rng(5);
  for (Family fam : kExactFamilies) {
    CAPTURE(family_name(fam));
    const SolutionSpec s = make_family(fam, random_params(fam, rng));
    for (const Point3& p : random_points(rng, 10, default_box(fam))) {
      const auto r = simplicity_residual(s.jet(p, 1), potential_w(s, p));
      CHECK(std::abs(r[0]) < 1e-9);
      CHECK(std::abs(r[1]) < 1e-9);
    }
  }
}

TEST_CASE("simplicity holds exactly when both scalar equations hold") {
  const SolutionSpec on = make_family(Family::NoKilling, {Poly1({0.3, 0.1})});
  const SolutionSpec off = on.perturbed(
      0.1, [](const std::array<Jet3, 3>& a) { return a[0] * a[1] * a[1]; });
  Rng rng(7);
  for (const Point3& p : random_points(rng, 10)) {
    const Jet3 w = potential_w(on, p);
    for (const SolutionSpec* s : {&on, &off}) {
      const Jet3 u = s->jet(p, 1);
      const bool eqs = std::abs(w.d(kX) - u.d(kY)) < 1e-9 &&
                       std::abs(u.d(kT) - u.value() * u.d(kX) - w.d(kY)) < 1e-9;
      const auto r = simplicity_residual(u, w);
      CHECK((std::max(std::abs(r[0]), std::abs(r[1])) < 1e-9) == eqs);
    }
    CHECK(std::abs(simplicity_residual(off.jet(p, 1), w)[0]) > 1e-3);
  }
}

TEST_CASE("Darboux expansion") {
  const Point3 p0{0.3, 0.2, 0.5};
  const DarbouxReport z = darboux_check(p0, zero_jet(1), zero_jet(1),
                                        DarbouxChain{{zero_jet(1)}, {zero_jet(1)}});
  CHECK(z.max_over(-100, 100) == 0.0);
  CHECK(z.residual_by_order.count(2) == 1);
  CHECK(z.residual_by_order.count(-4) == 1);

  const SolutionSpec ce = make_family(Family::ConformalEinstein, {Poly1({1.0})});
  for (Point3 p : {Point3{1.2, 1.4, 1.1}, Point3{1.8, 1.1, 1.6}}) {
    const Jet3 u = ce.jet(p, 2), w = potential_w(ce, p, 2);
    const DarbouxChain c = onshell_darboux_chain(u, w, 6);
    const DarbouxReport r = darboux_check(p, u, w, c);
    CHECK(r.max_over(-1, 2) < 1e-9);

    DarbouxChain bad = c;
    bad.u[0] = bad.u[0] + 0.1 * Jet3::variable(kX, p[0], 1);
    CHECK(darboux_check(p, u, w, bad).residual_by_order.at(0) > 1e-3);
  }
  CHECK_THROWS_AS(darboux_check(p0, zero_jet(1), zero_jet(1), DarbouxChain{{zero_jet(1)}, {}}, 1),
                  DomainError);
}

// With u_1 = u, w_1 = w and no other coefficients the l^0 order needs u_2 = w.
TEST_CASE("Darboux expansion with the chain u_1 = u, w_1 = w" * doctest::should_fail()) {
  const SolutionSpec ce = make_family(Family::ConformalEinstein, {Poly1({1.0})});
  const Point3 p{1.2, 1.4, 1.1};
  const Jet3 u = ce.jet(p, 2), w = potential_w(ce, p, 2);
  const DarbouxReport r = darboux_check(p, u, w, DarbouxChain{{u.truncated(1)}, {w.truncated(1)}});
  CHECK(r.max_over(-1, 2) < 1e-9);
}

TEST_CASE("curve intersection worked examples") {
  const Vec3 o(0, 0, 0);
  const Intersection a = curve_intersection(Vec3(1, 2, 0), o);
  CHECK(a.causal == CausalClass::SpaceLike);
  CHECK(a.h == Approx(4.0));
  CHECK(has_root(a, 1.0));
  CHECK(has_root(a, 3.0));

  const Intersection b = curve_intersection(Vec3(1, 2, 1), o);
  CHECK(b.causal == CausalClass::Null);
  CHECK(b.h == 0.0);
  CHECK(has_root(b, 2.0));

  const Intersection c = curve_intersection(Vec3(1, 0, 1), o);
  CHECK(c.causal == CausalClass::TimeLike);
  CHECK(c.h == Approx(-4.0));
  CHECK(has_root(c, cd(0, 1)));
  CHECK(has_root(c, cd(0, -1)));

  CHECK_THROWS_AS(curve_intersection(o, o), DomainError);
  CHECK(causal_name(CausalClass::SpaceLike) == "space-like");
}

TEST_CASE("degenerate R1 = 0") {
  const Intersection a = curve_intersection(Vec3(0, 2, 1), Vec3(0, 0, 0));
  CHECK(a.causal == CausalClass::SpaceLike);
  const Intersection r = incidence_roots(Vec3(0, 2, 1), Vec3(0, 0, 0));
  REQUIRE(r.lambda.size() == 1);
  CHECK(r.lambda[0].real() == Approx(-0.5));
  const Intersection n = incidence_roots(Vec3(0, 0, 1), Vec3(0, 0, 0));
  CHECK(n.lambda.empty());
  CHECK(n.causal == CausalClass::Null);
}

TEST_CASE("incidence evaluation") {
  CHECK(incidence_eval(Vec3(0, 0, 1), 0.37) == cd(1.0));
  CHECK(incidence_eval(Vec3(1, 0, 0), 2.0) == cd(4.0));
  CHECK(incidence_eval(Vec3(0.5, -1, 2), cd(0, 1)) == cd(2 - 0.5, -1));
}

TEST_CASE("incidence roots are where the curves meet") {
  Rng rng(13);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int k = 0; k < 200; ++k) {
    const Vec3 p1(d(rng), d(rng), d(rng)), p2(d(rng), d(rng), d(rng));
    const Intersection r = incidence_roots(p1, p2);
    for (cd l : r.lambda)
      CHECK(std::abs(incidence_eval(p1, l) - incidence_eval(p2, l)) < 1e-9 * (1 + std::norm(l)));
    CHECK(r.causal == curve_intersection(p1, p2).causal);
  }
}

// Plugging the example roots {1, 3} into xi gives 3 and 0 at lambda = 1.
TEST_CASE("stated roots meet the curves" * doctest::should_fail()) {
  const Vec3 p1(1, 2, 0), p2(0, 0, 0);
  for (cd l : curve_intersection(p1, p2).lambda)
    CHECK(std::abs(incidence_eval(p1, l) - incidence_eval(p2, l)) < 1e-9);
}

TEST_CASE("intersection is symmetric and the causal classes partition") {
  Rng rng(17);
  std::uniform_real_distribution<double> d(-2, 2);
  int counts[3] = {0, 0, 0};
  for (int k = 0; k < 500; ++k) {
    Vec3 p1(d(rng), d(rng), d(rng)), p2(d(rng), d(rng), d(rng));
    if (k % 50 == 0) {  // force a null pair: dy^2 = 4 dx dt
      const Vec3 r(0.5, 1.0, 0.5);
      p1 = p2 + r;
    }
    const Intersection a = curve_intersection(p1, p2), b = curve_intersection(p2, p1);
    CHECK(a.causal == b.causal);
    REQUIRE(a.lambda.size() == b.lambda.size());
    for (cd l : a.lambda) CHECK(has_root(b, l));
    const bool sl = a.causal == CausalClass::SpaceLike, nl = a.causal == CausalClass::Null,
               tl = a.causal == CausalClass::TimeLike;
    CHECK(sl + nl + tl == 1);
    CHECK(sl == (a.h > 0));
    CHECK(tl == (a.h < 0));
    ++counts[static_cast<int>(a.causal)];
  }
  CHECK(counts[0] > 0);
  CHECK(counts[1] > 0);
  CHECK(counts[2] > 0);
}
