#include "dkpew/hyperkahler.hpp"

#include <cmath>
#include <memory>

#include "dkpew/errors.hpp"

namespace dkpew {

namespace {

void require_ux(double ux) {
  if (std::abs(ux) < 1e-12) throw DegenerateError("u_x = 0: the hyper-Kaehler metric degenerates");
}

Mat4 values(const Metric4Jet& g) {
  Mat4 m;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m(a, b) = g[a][b].value();
  return m;
}

}  // namespace

Metric4Jet metric_jet_from_dkp(const Jet3& u) {
  if (u.order() < 1) throw std::invalid_argument("metric_jet_from_dkp: need a jet of order >= 1");
  const int k = u.order() - 1;
  const Jet3 ux = u.diff(kX), uy = u.diff(kY), uu = u.truncated(k);
  require_ux(ux.value());
  const Jet3 zero = Jet3::constant(0.0, k);
  Metric4Jet g;
  for (auto& row : g) row.fill(zero);
  // (u_x/2)(dy^2 - 4 dx dt - 4u dt^2)
  g[kY4][kY4] += 0.5 * ux;
  g[kX4][kT4] -= ux;
  g[kT4][kX4] -= ux;
  g[kT4][kT4] -= 2.0 * ux * uu;
  // -(2/u_x) c c with c = dz - (u_x/2) dy - u_y dt
  const std::array<Jet3, 4> c{zero, -0.5 * ux, -uy, Jet3::constant(1.0, k)};
  const Jet3 s = -2.0 / ux;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) g[a][b] += s * c[a] * c[b];
  return g;
}

Mat4 metric_from_dkp(const SolutionSpec& spec, const Point4& p) {
  return values(metric_jet_from_dkp(spec.jet(spatial(p), 1)));
}

MetricFn<4> metric_field(const SolutionSpec& spec) {
  auto s = std::make_shared<SolutionSpec>(spec);
  return [s](const Vec4& q) { return metric_from_dkp(*s, to_point(q)); };
}

Tetrad tetrad(const SolutionSpec& spec, const Point4& p) {
  const Jet3 u = spec.jet(spatial(p), 1);
  const double ux = u.d(kX), uy = u.d(kY), uv = u.value(), z = p[3];
  require_ux(ux);
  Tetrad e;
  e.e00 = Vec4(0, 0, -ux, 0);
  e.e10 = Vec4(0, 0, -uy / ux, 1.0 / ux);
  e.e01 = Vec4(0, -ux, -(uy + z * ux), 1.0);
  e.e11 = Vec4(1.0, 0, uv - z * uy / ux, z / ux);
  return e;
}

Mat4 metric_from_tetrad(const Tetrad& e) {
  auto sym = [](const Vec4& a, const Vec4& b) -> Mat4 {
    return 0.5 * (a * b.transpose() + b * a.transpose());
  };
  return 2.0 * (sym(e.e00, e.e11) - sym(e.e01, e.e10));
}

SdForms sd_forms(const SolutionSpec& spec, const Point4& p) {
  const Jet3 u = spec.jet(spatial(p), 1);
  const double ux = u.d(kX), uy = u.d(kY), uv = u.value(), z = p[3];
  SdForms s;
  s.s00.set({kZ4, kT4}, 1.0);

  s.s01.add({kZ4, kY4}, 1.0);
  s.s01.add({kX4, kT4}, ux);
  s.s01.add({kY4, kT4}, uy);
  s.s01.add({kZ4, kT4}, 2.0 * z);

  s.s11.add({kX4, kY4}, ux);
  s.s11.add({kY4, kT4}, -uv * ux);
  s.s11.add({kX4, kT4}, uy);
  // d(uz) ^ dt
  s.s11.add({kX4, kT4}, z * ux);
  s.s11.add({kY4, kT4}, z * uy);
  s.s11.add({kZ4, kT4}, uv);
  // dz ^ (dx + z dy + z^2 dt)
  s.s11.add({kZ4, kX4}, 1.0);
  s.s11.add({kZ4, kY4}, z);
  s.s11.add({kZ4, kT4}, z * z);
  return s;
}

double wedge_identity_residual(const SdForms& s) {
  const Form4 r = -2.0 * wedge(s.s00, s.s11) - wedge(s.s01, s.s01);
  return r.max_abs();
}

FormField4 sd_form_field(const SolutionSpec& spec, SdForm which) {
  auto sp = std::make_shared<SolutionSpec>(spec);
  return {2, [sp, which](const Vec4& q) {
            const SdForms s = sd_forms(*sp, to_point(q));
            switch (which) {
              case SdForm::S00: return s.s00;
              case SdForm::S01: return s.s01;
              case SdForm::S11: return s.s11;
            }
            return s.s00;
          }};
}

double closure_residual(const SolutionSpec& spec, SdForm which, const Point4& p, double h) {
  return exterior_derivative_fd(sd_form_field(spec, which), to_vec(p), h).max_abs();
}

Monopole canonical_monopole(const SolutionSpec& spec) {
  auto sp = std::make_shared<SolutionSpec>(spec);
  Monopole m;
  m.V = [sp](const Point3& p) { return 0.5 * sp->jet(p, 3).diff(kX); };
  m.alpha = [sp](const Point3& p) {
    const Jet3 u = sp->jet(p, 3);
    return std::array<Jet3, 3>{Jet3::constant(0.0, 2), -0.5 * u.diff(kX), -u.diff(kY)};
  };
  return m;
}

std::array<double, 3> monopole_residual(const SolutionSpec& spec, const Monopole& m,
                                        const Point3& p) {
  const Jet3 u = spec.jet(p, 1);
  const double uv = u.value(), ux = u.d(kX);
  const Jet3 V = m.V(p);
  const auto a = m.alpha(p);
  // beta = dV + nu V / 2 with nu = -4 u_x dt
  const double bx = V.d(kX), by = V.d(kY), bt = V.d(kT) - 2.0 * ux * V.value();
  // Duality relations on the dKP Weyl metric, basis (dx^dy, dx^dt, dy^dt):
  //   *dx = dy^dx + 2u dy^dt,  *dy = 2 dt^dx,  *dt = dt^dy.
  const std::array<double, 3> star{-bx, -2.0 * by, 2.0 * uv * bx - bt};
  const std::array<double, 3> da{a[1].d(kX) - a[0].d(kY), a[2].d(kX) - a[0].d(kT),
                                 a[2].d(kY) - a[1].d(kT)};
  return {star[0] - da[0], star[1] - da[1], star[2] - da[2]};
}

double linearized_dkp_apply(const SolutionSpec& spec, const std::function<Jet3(const Point3&)>& V,
                            const Point3& p) {
  const Jet3 u = spec.jet(p, 2);
  const Jet3 v = V(p);
  if (v.order() < 2) throw std::invalid_argument("linearized_dkp_apply: V needs order >= 2");
  return v.partial({0, 2, 0}) - v.partial({1, 0, 1}) + u.value() * v.partial({2, 0, 0}) +
         2.0 * u.d(kX) * v.d(kX) + u.partial({2, 0, 0}) * v.value();
}

double jones_tod_expected_factor(double ux) { return -0.25 * ux * ux; }

JonesTodResult jones_tod_reduce(const SolutionSpec& spec, const Point3& p) {
  const Jet3 u = spec.jet(p, 2);
  const Metric4Jet gj = metric_jet_from_dkp(u);  // order 1
  const Mat4 g = values(gj);
  const Jet3 K2 = gj[kZ4][kZ4];
  if (std::abs(K2.value()) < 1e-14) throw DegenerateError("jones_tod_reduce: |K|^2 = 0");
  const Jet3 iK2 = reciprocal(K2);

  // K one-form and dK (nothing depends on z).
  Vec4 K;
  for (int a = 0; a < 4; ++a) K[a] = gj[a][kZ4].value();
  Form4 dK(2);
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) dK.set({a, b}, gj[b][kZ4].d(a) - gj[a][kZ4].d(b));
    dK.set({a, kZ4}, gj[kZ4][kZ4].d(a));
  }

  const Form4 KdK = wedge(Form4::one_form(K), dK);
  // Orientation dx^dy^dt^dz when u_x > 0, flipped when u_x < 0 (the real-slice
  // convention u_x > 0 applied to the chart). Otherwise nu comes out as
  // -(nu_ew + 2 d ln |u_x|) and the gauge relation fails.
  const int orientation = u.d(kX) > 0.0 ? +1 : -1;
  const Form4 nu4 = (2.0 / K2.value()) * hodge_star(KdK, g, orientation);

  JonesTodResult r;
  // Reduced metric on (x, y, t) as jets so that d ln |factor| is exact.
  std::array<std::array<Jet3, 3>, 3> hj;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) hj[a][b] = iK2 * gj[a][b] - iK2 * iK2 * gj[a][kZ4] * gj[b][kZ4];
  const int chart_of[3] = {kCX, kCY, kCT};  // x, y, t -> chart slot
  for (int a = 0; a < 3; ++a) {
    r.nu_reduced[chart_of[a]] = nu4.get({a});
    for (int b = 0; b < 3; ++b) r.h_reduced(chart_of[a], chart_of[b]) = hj[a][b].value();
  }
  const Vec3 q = to_chart(p);
  const WeylStructure ew = ew_from_dkp(spec);
  r.h_ew = ew.h(q);
  r.nu_ew = ew.nu(q);
  r.factor = r.h_reduced.cwiseProduct(r.h_ew).sum() / r.h_ew.squaredNorm();
  r.proportionality_gap = (r.h_reduced - r.factor * r.h_ew).cwiseAbs().maxCoeff();
  // h_ew(y, y) = 1 identically, so the factor field is h_reduced(y, y).
  const Jet3& f = hj[kY][kY];
  Vec3 dlog;
  for (int a = 0; a < 3; ++a) dlog[chart_of[a]] = f.d(a) / f.value();
  // 2 d ln phi with phi^2 = |factor| is d ln |factor|.
  r.nu_gauge_gap = (r.nu_reduced - r.nu_ew - dlog).cwiseAbs().maxCoeff();
  return r;
}

NullKvResult null_kv_metric(const Poly1& F, const Point4& p, double h) {
  MetricFn<4> g = [F](const Vec4& q) {
    Mat4 m = Mat4::Zero();
    m(0, 1) = m(1, 0) = 0.5;  // dw dt
    m(2, 3) = m(3, 2) = 0.5;  // dz dy
    m(2, 2) = q[1] - F(q[0]);
    return m;
  };
  NullKvResult r;
  const Vec4 v = to_vec(p);
  r.g = g(v);
  r.ricci_max = curvature_fd<4>(g, v, h).ricci.cwiseAbs().maxCoeff();
  return r;
}

Mat4 flat_example_pullback(const Point4& XYtz) {
  const double X = XYtz[0], Y = XYtz[1], t = XYtz[2], z = XYtz[3];
  const Point4 xytz{X * t + 0.5 * z * z * t, Y - z * t, t, z};
  const Mat4 g = metric_from_dkp(make_family(Family::Flat, {}), xytz);
  Mat4 J = Mat4::Zero();  // rows (x, y, t, z), columns (X, Y, t, z)
  J(0, 0) = t;
  J(0, 2) = X + 0.5 * z * z;
  J(0, 3) = z * t;
  J(1, 1) = 1.0;
  J(1, 2) = -z;
  J(1, 3) = -t;
  J(2, 2) = 1.0;
  J(3, 3) = 1.0;
  return J.transpose() * g * J;
}

}  // namespace dkpew
