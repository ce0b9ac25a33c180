#include <cmath>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "dkpew/errors.hpp"
#include "dkpew/jet.hpp"
#include "dkpew/laurent.hpp"
#include "dkpew/poly1.hpp"

using namespace dkpew;
using doctest::Approx;

TEST_CASE("jet partials of a polynomial match hand differentiation") {
  const Jet3 x = Jet3::variable(0, 2.0), y = Jet3::variable(1, -1.0), t = Jet3::variable(2, 0.5);
  const Jet3 f = x * x * y + 3.0 * y * t * t * t - x;
  // f = x^2 y + 3 y t^3 - x at (2, -1, 0.5)
  CHECK(f.value() == Approx(-4.0 - 0.375 - 2.0));
  CHECK(f.partial({1, 0, 0}) == Approx(2 * 2 * -1.0 - 1.0));
  CHECK(f.partial({0, 1, 0}) == Approx(4.0 + 3 * 0.125));
  CHECK(f.partial({1, 1, 0}) == Approx(4.0));
  CHECK(f.partial({0, 1, 2}) == Approx(18 * 0.5));
  CHECK(f.partial({0, 1, 3}) == Approx(18.0));
  CHECK(f.partial({2, 1, 0}) == Approx(2.0));
  CHECK(f.partial({0, 0, 4}) == Approx(0.0));
}

TEST_CASE("mixed partials commute and elementary functions differentiate exactly") {
  const Jet3 x = Jet3::variable(0, 0.3), y = Jet3::variable(1, 0.7);
  const Jet3 f = sin(x * y) + exp(x) * log(1.0 + y) + sqrt(2.0 + x * x);
  CHECK(f.diff(0).diff(1).value() == Approx(f.diff(1).diff(0).value()).epsilon(1e-14));
  // d/dx sin(xy) = y cos(xy); d/dx exp(x) log(1+y); d/dx sqrt(2+x^2) = x / sqrt(2+x^2)
  const double want = 0.7 * std::cos(0.21) + std::exp(0.3) * std::log(1.7) +
                      0.3 / std::sqrt(2.09);
  CHECK(f.d(0) == Approx(want).epsilon(1e-14));
  const Jet3 r = reciprocal(x) * x;
  CHECK(r.value() == Approx(1.0));
  CHECK(std::abs(r.partial({3, 0, 0})) < 1e-12);
  CHECK(pow(x, 2.0).partial({2, 0, 0}) == Approx(2.0));
}

TEST_CASE("order-0 jets hold only the value") {
  const Jet3 c = Jet3::variable(0, 1.5, 0);
  CHECK(c.order() == 0);
  CHECK(c.value() == 1.5);
  CHECK_THROWS_AS(c.partial({1, 0, 0}), std::out_of_range);
}

TEST_CASE("substitute composes multivariate jets") {
  // f(a, b) = a^2 b about (1, 2); a = x + y, b = x y about (x, y) = (0.5, 0.5 ... )
  const Jet<2> a = Jet<2>::variable(0, 1.0), b = Jet<2>::variable(1, 2.0);
  const Jet<2> f = a * a * b;
  const Jet3 x = Jet3::variable(0, 0.25), y = Jet3::variable(1, 0.75), t = Jet3::variable(2, 2.0);
  const Jet3 g = substitute<2, 3>(f, {x + y, t});
  const Jet3 direct = (x + y) * (x + y) * t;
  for (int k = 0; k < Jet3::kSize; ++k) CHECK(g.raw()[k] == Approx(direct.raw()[k]));
}

TEST_CASE("Poly1 evaluates, differentiates and enforces the degree bound") {
  const Poly1 p({1.0, -2.0, 0.0, 4.0});
  CHECK(p(2.0) == Approx(1 - 4 + 32));
  CHECK(p.derivative()(2.0) == Approx(-2 + 48));
  CHECK(p.derivative(3).degree() == 0);
  CHECK(Poly1::constant(3.0).derivative().is_zero());
  CHECK(Poly1({1.0, 0.0, 0.0}).degree() == 0);
  CHECK_THROWS_AS(Poly1(std::vector<double>(10, 1.0)), ConfigError);
  const Jet3 t = Jet3::variable(2, 2.0);
  CHECK(p(t).d(2) == Approx(46.0));
}

TEST_CASE("Poly1 JSON round trip accepts numbers and arrays") {
  const Poly1 a = nlohmann::json(2.5).get<Poly1>();
  CHECK(a.coeffs() == std::vector<double>{2.5});
  const Poly1 b = nlohmann::json::parse("[0, 1, 0.5]").get<Poly1>();
  CHECK(b(2.0) == Approx(4.0));
  const Poly1 c = nlohmann::json(b).get<Poly1>();
  CHECK(c.coeffs() == b.coeffs());
}

TEST_CASE("Laurent series: product, derivative and inverse") {
  using L = Laurent<double>;
  // Q = l + 2 l^-1 + 3 l^-2, truncated at l^-5
  L Q(-5, 1, 0.0);
  Q.set(1, 1.0);
  Q.set(-1, 2.0);
  Q.set(-2, 3.0);
  const L one = Q * Q.inverse();
  CHECK(one.coeff(0) == Approx(1.0));
  for (int k = -5; k <= 1; ++k)
    if (k != 0) CHECK(std::abs(one.coeff(k)) < 1e-12);
  // 1/Q = l^-1 (1 + 2 l^-2 + 3 l^-3)^-1 = l^-1 - 2 l^-3 - 3 l^-4 + ...
  const L iq = Q.inverse();
  CHECK(iq.coeff(-1) == Approx(1.0));
  CHECK(iq.coeff(-2) == Approx(0.0));
  CHECK(iq.coeff(-3) == Approx(-2.0));
  CHECK(iq.coeff(-4) == Approx(-3.0));
  const L dQ = Q.derivative();
  CHECK(dQ.coeff(0) == Approx(1.0));
  CHECK(dQ.coeff(-2) == Approx(-2.0));
  CHECK(dQ.coeff(-3) == Approx(-6.0));
  const L sq = Q * Q;
  CHECK(sq.coeff(2) == Approx(1.0));
  CHECK(sq.coeff(0) == Approx(4.0));
  CHECK(sq.coeff(-1) == Approx(6.0));
}
