#include "dkpew/minitwistor.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "dkpew/errors.hpp"

namespace dkpew {

namespace {

int pair_index(int a, int b) {
  for (int i = 0; i < 6; ++i)
    if (kPiPairs[i][0] == a && kPiPairs[i][1] == b) return i;
  throw std::out_of_range("pair_index");
}

// Pi components with jet coefficients (the jets lose one order).
TwoForm4L<Jet3> pi_jets(const Jet3& u, const Jet3& w) {
  const int k = std::min(u.order(), w.order()) - 1;
  if (k < 0) throw std::invalid_argument("Pi needs u and w jets of order >= 1");
  const Jet3 zero = Jet3::constant(0.0, k), one = Jet3::constant(1.0, k);
  const Jet3 ux = u.diff(kX), uy = u.diff(kY), ut = u.diff(kT);
  const Jet3 wx = w.diff(kX), wy = w.diff(kY);
  auto poly = [&](std::initializer_list<Jet3> cs) {
    Laurent<Jet3> p(0, static_cast<int>(cs.size()) - 1, zero);
    int k2 = 0;
    for (const auto& c : cs) p.set(k2++, c);
    return p;
  };
  return {poly({-ux}),                 // dx^dy
          poly({-wx, -ux}),            // dx^dt
          poly({one}),                 // dx^dl
          poly({ut - wy, -uy}),        // dy^dt
          poly({zero, one}),           // dy^dl
          poly({u.truncated(k), zero, one})};  // dt^dl
}

Laurent<double> values(const Laurent<Jet3>& L) {
  return L.map<double>([](const Jet3& j) { return j.value(); }, 0.0);
}

Laurent<double> partial(const Laurent<Jet3>& L, int dir) {
  if (dir == 3) return values(L.derivative());
  return L.map<double>([dir](const Jet3& j) { return j.d(dir); }, 0.0);
}

}  // namespace

PiForm build_pi(const Jet3& u, const Jet3& w) {
  const auto pj = pi_jets(u, w);
  PiForm out{values(pj[0]), values(pj[1]), values(pj[2]),
             values(pj[3]), values(pj[4]), values(pj[5])};
  return out;
}

Laurent<double> pi_wedge_pi(const PiForm& p) {
  // Pi^Pi = 2(P_xy P_tl - P_xt P_yl + P_xl P_yt) dx^dy^dt^dl
  return 2.0 * (p[0] * p[5] - p[1] * p[4] + p[2] * p[3]);
}

std::array<double, 2> simplicity_residual(const Jet3& u, const Jet3& w) {
  const Laurent<double> ww = pi_wedge_pi(build_pi(u, w));
  return {0.5 * ww.coeff(1), 0.5 * ww.coeff(0)};
}

double pi_closure_residual(const Jet3& u, const Jet3& w) {
  if (u.order() < 2 || w.order() < 2)
    throw std::invalid_argument("pi_closure_residual: jets of order >= 2 required");
  const auto pj = pi_jets(u, w);
  double m = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) {
        const Laurent<double> d = partial(pj[pair_index(b, c)], a) -
                                  partial(pj[pair_index(a, c)], b) +
                                  partial(pj[pair_index(a, b)], c);
        for (int k = d.floor(); k <= d.top(); ++k) m = std::max(m, std::abs(d.coeff(k)));
      }
  return m;
}

Jet3 potential_w(const SolutionSpec& spec, const Point3& p, int order, double x0, double y0) {
  using Quad = boost::math::quadrature::gauss<double, 30>;
  const auto& xi = Quad::abscissa();
  const auto& wt = Quad::weights();
  const Jet3 X = Jet3::variable(kX, p[0], order);
  const Jet3 Y = Jet3::variable(kY, p[1], order);
  const Jet3 T = Jet3::variable(kT, p[2], order);
  const Jet3 X0 = Jet3::constant(x0, order);
  Jet3 ix = Jet3::constant(0.0, order), iy = Jet3::constant(0.0, order);
  for (std::size_t n = 0; n < xi.size(); ++n) {
    for (double sgn : {-1.0, 1.0}) {
      if (xi[n] == 0.0 && sgn > 0) continue;
      const double tau = 0.5 * (1.0 + sgn * xi[n]);
      const double w = 0.5 * wt[n];
      // int_{x0}^{x} u_y(s, y, t) ds
      {
        const Point3 q{x0 + tau * (p[0] - x0), p[1], p[2]};
        const Jet3 uy = spec.jet(q, order + 1).diff(kY);
        ix += w * substitute<3, 3>(uy, {X0 + tau * (X - X0), Y, T});
      }
      // int_{y0}^{y} (u_t - u u_x)(x0, s, t) ds
      {
        const Point3 q{x0, y0 + tau * (p[1] - y0), p[2]};
        const Jet3 u = spec.jet(q, order + 1);
        const Jet3 G = u.diff(kT) - u.truncated(order) * u.diff(kX);
        iy += w * substitute<3, 3>(G, {X0, y0 + tau * (Y - y0), T});
      }
    }
  }
  return (X - x0) * ix + (Y - y0) * iy;
}

DarbouxChain onshell_darboux_chain(const Jet3& u, const Jet3& w, int N) {
  if (N < 3) throw DomainError("onshell_darboux_chain: truncation must be at least 3");
  DarbouxChain c;
  const Jet3 zero = Jet3::constant(0.0, 1);
  c.u.assign(N, zero);
  c.w.assign(N, zero);
  c.u[0] = u.truncated(1);
  c.u[1] = w.truncated(1);
  const double gx = u.d(kT) - 2.0 * u.value() * u.d(kX);
  const double gy = w.d(kT) - 2.0 * u.value() * u.d(kY);
  c.u[2] = gx * Jet3::variable(kX, 0.0, 1) + gy * Jet3::variable(kY, 0.0, 1);
  return c;
}

double DarbouxReport::max_over(int lo, int hi) const {
  double m = 0.0;
  for (const auto& [k, v] : residual_by_order)
    if (k >= lo && k <= hi) m = std::max(m, v);
  return m;
}

DarbouxReport darboux_check(const Point3& p, const Jet3& u, const Jet3& w, const DarbouxChain& chain,
                            int N) {
  if (N < 2) throw DomainError("darboux_check: truncation N must be at least 2");
  if (chain.u.empty()) throw DomainError("darboux_check: empty coefficient chain");
  const Jet3 zero = Jet3::constant(0.0, 1);
  const int floor = -N;
  using L = Laurent<Jet3>;

  L Q = L::monomial(1, Jet3::constant(1.0, 1), floor, zero);
  for (int i = 1; i <= N && i <= static_cast<int>(chain.u.size()); ++i)
    Q += L::monomial(-i, chain.u[i - 1], floor, zero);

  const Jet3 X = Jet3::variable(kX, p[0], 1), Y = Jet3::variable(kY, p[1], 1),
             T = Jet3::variable(kT, p[2], 1);
  const L Qinv = Q.inverse();
  L P = L::monomial(0, X, floor, zero) + Q.scaled(Y) + (Q * Q).scaled(T);
  L Qpow = L::monomial(0, Jet3::constant(1.0, 1), floor, zero);
  for (int i = 1; i <= N && i <= static_cast<int>(chain.w.size()); ++i) {
    Qpow = Qpow * Qinv;
    P += Qpow.scaled(chain.w[i - 1]);
  }

  std::array<Laurent<double>, 4> dP{partial(P, 0), partial(P, 1), partial(P, 2), partial(P, 3)};
  std::array<Laurent<double>, 4> dQ{partial(Q, 0), partial(Q, 1), partial(Q, 2), partial(Q, 3)};
  const PiForm pi = build_pi(u, w);

  DarbouxReport rep;
  rep.truncation = N;
  for (int k = 2; k >= -(N - 2); --k) rep.residual_by_order[k] = 0.0;
  for (int i = 0; i < 6; ++i) {
    const int a = kPiPairs[i][0], b = kPiPairs[i][1];
    const Laurent<double> d = dP[a] * dQ[b] - dP[b] * dQ[a];
    for (int k = 2; k >= -(N - 2); --k) {
      const double r = std::abs(d.coeff(k) - pi[i].coeff(k));
      rep.residual_by_order[k] = std::max(rep.residual_by_order[k], r);
    }
  }
  return rep;
}

std::string causal_name(CausalClass c) {
  switch (c) {
    case CausalClass::SpaceLike: return "space-like";
    case CausalClass::Null: return "null";
    case CausalClass::TimeLike: return "time-like";
  }
  return "null";
}

namespace {

Intersection classify_roots(const Vec3& p1, const Vec3& p2, double b_sign) {
  const Vec3 R = p1 - p2;
  if (R.cwiseAbs().maxCoeff() == 0.0) throw DomainError("curve_intersection: p1 = p2");
  const double R1 = R[0], R2 = R[1], R3 = R[2];
  Intersection out;
  out.h = R2 * R2 - 4.0 * R3 * R1;
  const double scale = R2 * R2 + 4.0 * std::abs(R3 * R1);
  const double tol = 1e-12 * scale;
  out.causal = out.h > tol ? CausalClass::SpaceLike
                           : (out.h < -tol ? CausalClass::TimeLike : CausalClass::Null);
  if (std::abs(R1) <= 1e-14 * R.cwiseAbs().maxCoeff()) {
    if (R2 != 0.0) out.lambda.push_back(-R3 / R2);
    return out;
  }
  const std::complex<double> s =
      out.causal == CausalClass::Null ? 0.0 : std::sqrt(std::complex<double>(out.h, 0.0));
  // b_sign = 2 gives (2 R2 -+ s) / (2 R1); b_sign = -1 gives the incidence roots.
  out.lambda.push_back((b_sign * R2 - s) / (2.0 * R1));
  out.lambda.push_back((b_sign * R2 + s) / (2.0 * R1));
  return out;
}

}  // namespace

Intersection curve_intersection(const Vec3& p1, const Vec3& p2) {
  return classify_roots(p1, p2, 2.0);
}

Intersection incidence_roots(const Vec3& p1, const Vec3& p2) {
  return classify_roots(p1, p2, -1.0);
}

std::complex<double> incidence_eval(const Vec3& p, std::complex<double> lambda) {
  return p[2] + lambda * p[1] + lambda * lambda * p[0];
}

}  // namespace dkpew
