#include "dkpew/weyl.hpp"

#include <cmath>
#include <memory>

#include "dkpew/errors.hpp"

namespace dkpew {

WeylStructure ew_from_dkp(const SolutionSpec& spec) {
  auto s = std::make_shared<SolutionSpec>(spec);
  WeylStructure ws;
  ws.h = [s](const Vec3& q) {
    const double u = s->u(from_chart(q));
    Mat3 h = Mat3::Zero();
    h(kCT, kCT) = -4.0 * u;
    h(kCY, kCY) = 1.0;
    h(kCT, kCX) = h(kCX, kCT) = -2.0;
    return h;
  };
  ws.nu = [s](const Vec3& q) {
    const Jet3 u = s->jet(from_chart(q), 1);
    return Vec3(-4.0 * u.d(kX), 0.0, 0.0);
  };
  ws.gauge = "dkp:" + spec.label();
  return ws;
}

WeylStructure dkdv_structure(const Poly1& F) {
  auto chart_check = [F](const Vec3& q) {
    const double a = q[0] * F(q[2]) - 1.0;
    if (std::abs(a) < 1e-12) throw DegenerateError("dkdv_structure: tF(s) - 1 vanishes");
    return a;
  };
  WeylStructure ws;
  ws.h = [chart_check](const Vec3& q) {
    const double a = chart_check(q);
    Mat3 h = Mat3::Zero();
    h(1, 1) = 1.0;
    h(0, 2) = h(2, 0) = 2.0 * a;
    return h;
  };
  ws.nu = [chart_check, F](const Vec3& q) {
    const double a = chart_check(q);
    return Vec3(4.0 * F(q[2]) / a, 0.0, 0.0);
  };
  ws.gauge = "dkdv";
  return ws;
}

WeylStructure conformal_rescale(const WeylStructure& ws,
                                std::function<std::pair<double, Vec3>(const Vec3&)> phi) {
  WeylStructure r;
  auto base = std::make_shared<WeylStructure>(ws);
  r.h = [base, phi](const Vec3& q) {
    const double f = phi(q).first;
    if (!(f > 0.0)) throw DomainError("conformal_rescale: phi must be positive");
    return Mat3(f * f * base->h(q));
  };
  r.nu = [base, phi](const Vec3& q) {
    const auto [f, df] = phi(q);
    return Vec3(base->nu(q) + 2.0 * df / f);
  };
  r.gauge = ws.gauge + ":rescaled";
  return r;
}

Christoffel3 christoffels(const WeylStructure& ws, const Vec3& p, double h) {
  return christoffel_fd<3>(ws.h, p, h);
}

WeylCurvature weyl_curvature(const WeylStructure& ws, const Vec3& p, double h) {
  WeylCurvature c;
  c.lc = curvature_fd<3>(ws.h, p, h);
  c.nu = ws.nu(p);
  const auto& G = c.lc.gamma;
  for (int i = 0; i < 3; ++i) {
    const Vec3 dnu = central_diff<3>(ws.nu, p, i, h);
    for (int j = 0; j < 3; ++j) {
      double v = dnu[j];
      for (int k = 0; k < 3; ++k) v -= G(k, i, j) * c.nu[k];
      c.grad_nu(i, j) = v;
    }
  }
  const Mat3& hi = c.lc.inverse;
  c.div_nu = hi.cwiseProduct(c.grad_nu).sum();
  c.nu_sq = c.nu.dot(hi * c.nu);
  const Mat3 sym = 0.5 * (c.grad_nu + c.grad_nu.transpose());
  const double R = c.lc.scalar;
  c.chi = c.lc.ricci + 0.5 * sym + 0.25 * c.nu * c.nu.transpose() -
          (R + 0.5 * c.div_nu + 0.25 * c.nu_sq) / 3.0 * c.lc.metric;
  c.W = R + 2.0 * c.div_nu - 0.5 * c.nu_sq;
  return c;
}

Mat3 ew_residual(const WeylStructure& ws, const Vec3& p, double h) {
  return weyl_curvature(ws, p, h).chi;
}

double weyl_scalar(const WeylStructure& ws, const Vec3& p, double h) {
  return weyl_curvature(ws, p, h).W;
}

Mat3 weighted_constancy_residual(const WeylStructure& ws, const WeightedVector& v, const Vec3& p,
                                 double h) {
  const Christoffel3 G = christoffels(ws, p, h);
  const Mat3 g = ws.h(p);
  const Mat3 gi = checked_inverse<3>(g);
  const Vec3 nu = ws.nu(p);
  const Vec3 nu_up = gi * nu;
  const Vec3 vv = v.v(p);
  const Vec3 v_down = g * vv;
  const double nu_v = nu.dot(vv);
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    const Vec3 dv = central_diff<3>(v.v, p, i, h);
    for (int j = 0; j < 3; ++j) {
      double cov = dv[j];
      for (int k = 0; k < 3; ++k) cov += G(j, i, k) * vv[k];
      r(i, j) = cov - (i == j ? 0.5 * nu_v : 0.0) - 0.5 * (v.weight + 1.0) * nu[i] * vv[j] +
                0.5 * nu_up[j] * v_down[i];
    }
  }
  return r;
}

std::array<double, 4> hyper_cr_residuals(const SolutionSpec& spec, const Point3& p) {
  const Jet3 u = spec.jet(p, 4);
  const Jet3 uxx = u.diff(kX).diff(kX);
  if (std::abs(uxx.value()) < 1e-12)
    throw DegenerateError("hyper_cr_residuals: u_xx = 0 (Einstein gauge, rho = 0 branch)");
  const Jet3 rho = -2.0 * uxx.diff(kY) / uxx.truncated(1);
  const double r = rho.value();
  return {rho.d(kY) - 2.0 * uxx.value(), rho.d(kX),
          2.0 * r * u.d(kX) - rho.d(kT) + 4.0 * u.partial({1, 1, 0}), r * r + 8.0 * uxx.value()};
}

double SymmetryResidual::max_abs() const {
  return std::max(conformal.cwiseAbs().maxCoeff(), gauge.cwiseAbs().maxCoeff());
}

namespace {

struct LieData {
  Mat3 lie_h;
  double psi;
};

LieData lie_metric(const WeylStructure& ws, const VectorField3& K, const Vec3& q, double h) {
  const Mat3 g = ws.h(q);
  const Vec3 k = K(q);
  Mat3 dK;  // (i, m) = d_i K^m
  Mat3 lie = Mat3::Zero();
  std::array<Mat3, 3> dg;
  for (int i = 0; i < 3; ++i) {
    dg[i] = central_diff<3>(ws.h, q, i, h);
    dK.row(i) = central_diff<3>(K, q, i, h).transpose();
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v = 0.0;
      for (int m = 0; m < 3; ++m) v += k[m] * dg[m](i, j) + g(m, j) * dK(i, m) + g(i, m) * dK(j, m);
      lie(i, j) = v;
    }
  const double psi = checked_inverse<3>(g).cwiseProduct(lie).sum() / 3.0;
  return {lie, psi};
}

}  // namespace

SymmetryResidual symmetry_residual(const WeylStructure& ws, const VectorField3& K, const Vec3& p,
                                   double h) {
  const LieData L = lie_metric(ws, K, p, h);
  SymmetryResidual r;
  r.psi = L.psi;
  r.conformal = L.lie_h - L.psi * ws.h(p);
  auto psi_at = [&](const Vec3& q) { return lie_metric(ws, K, q, h).psi; };
  const Vec3 nu = ws.nu(p);
  const Vec3 k = K(p);
  std::array<Vec3, 3> dnu;
  for (int m = 0; m < 3; ++m) dnu[m] = central_diff<3>(ws.nu, p, m, h);
  for (int i = 0; i < 3; ++i) {
    const Vec3 dKi = central_diff<3>(K, p, i, h);
    double v = 0.0;
    for (int m = 0; m < 3; ++m) v += k[m] * dnu[m][i] + nu[m] * dKi[m];
    r.gauge[i] = v - central_diff<3>(psi_at, p, i, h);
  }
  return r;
}

VectorField3 hyper_cr_generator(HyperCrGenerator g) {
  switch (g) {
    case HyperCrGenerator::K1:
      return [](const Vec3&) { return Vec3(1, 0, 0); };
    case HyperCrGenerator::K2:
      return [](const Vec3& q) { return Vec3(0, 0.5 * q[kCY], q[kCX]); };
    case HyperCrGenerator::K3:
      return [](const Vec3& q) { return Vec3(q[kCT], 0.5 * q[kCY], 0); };
    case HyperCrGenerator::K2Plus3K3:
      return [](const Vec3& q) { return Vec3(3 * q[kCT], 2 * q[kCY], q[kCX]); };
    case HyperCrGenerator::K4:
    case HyperCrGenerator::K4Printed: {
      const double cy = g == HyperCrGenerator::K4 ? 4.0 : 1.0;
      return [cy](const Vec3& q) {
        const double t = q[kCT], y = q[kCY], x = q[kCX];
        return Vec3(3 * t * t, cy * t * y, y * y + 2 * x * t);
      };
    }
  }
  return {};
}

std::vector<GeodesicState> weyl_geodesic(const WeylStructure& ws, const Vec3& x0,
                                         const Vec3& xdot0, double s_span, int steps, bool weyl,
                                         double h) {
  if (steps <= 0) throw ConfigError("weyl_geodesic: steps must be positive");
  auto accel = [&](const Vec3& x, const Vec3& v) -> Vec3 {
    const Mat3 g = ws.h(x);
    if (std::abs(g.determinant()) < 1e-12)
      throw DegenerateError("weyl_geodesic: metric degenerates along the trajectory");
    const Christoffel3 G = christoffels(ws, x, h);
    Vec3 a;
    for (int i = 0; i < 3; ++i) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) s += G(i, j, k) * v[j] * v[k];
      a[i] = -s;
    }
    if (weyl) {
      const Vec3 nu = ws.nu(x);
      const Vec3 nu_up = g.inverse() * nu;
      a += v * nu.dot(v) - 0.5 * v.dot(g * v) * nu_up;
    }
    return a;
  };
  const double ds = s_span / steps;
  std::vector<GeodesicState> out;
  out.reserve(steps + 1);
  GeodesicState st{0.0, x0, xdot0};
  out.push_back(st);
  for (int n = 0; n < steps; ++n) {
    const Vec3 k1x = st.xdot, k1v = accel(st.x, st.xdot);
    const Vec3 k2x = st.xdot + 0.5 * ds * k1v, k2v = accel(st.x + 0.5 * ds * k1x, k2x);
    const Vec3 k3x = st.xdot + 0.5 * ds * k2v, k3v = accel(st.x + 0.5 * ds * k2x, k3x);
    const Vec3 k4x = st.xdot + ds * k3v, k4v = accel(st.x + ds * k3x, k4x);
    st.x += ds / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
    st.xdot += ds / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    st.s += ds;
    if (!st.x.allFinite() || !st.xdot.allFinite())
      throw DegenerateError("weyl_geodesic: trajectory left the regular region");
    out.push_back(st);
  }
  return out;
}

}  // namespace dkpew
