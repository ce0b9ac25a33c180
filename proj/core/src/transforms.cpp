#include "dkpew/transforms.hpp"

#include <cmath>
#include <memory>

#include <nlohmann/json.hpp>

#include "dkpew/errors.hpp"

namespace dkpew {

SolutionSpec apply_coordtrans(const SolutionSpec& spec, const Poly1& f, const Poly1& g) {
  auto base = std::make_shared<SolutionSpec>(spec);
  const Poly1 f1 = f.derivative(), f2 = f.derivative(2), g1 = g.derivative();
  auto eval = [base, f, f1, f2, g, g1](const std::array<Jet3, 3>& a) {
    const Jet3& X = a[0];
    const Jet3& Y = a[1];
    const Jet3& T = a[2];
    const Jet3 F1 = f1(T);
    const Jet3 inner_u = base->compose({X - F1 * Y - g(T), Y - 2.0 * f(T), T});
    return inner_u - Y * f2(T) - F1 * F1 - g1(T);
  };
  auto guard = [base, f, f1, g](const Point3& p) {
    const double t = p[2];
    return base->in_guard({p[0] - f1(t) * p[1] - g(t), p[1] - 2.0 * f(t), t});
  };
  return SolutionSpec::custom(eval, guard, "coordtrans(" + spec.label() + ")",
                              "preimage of " + spec.guard_description());
}

SolutionSpec apply_conftrans(const SolutionSpec& spec, const Poly1& c) {
  auto base = std::make_shared<SolutionSpec>(spec);
  const Poly1 c1 = c.derivative(), c2 = c.derivative(2), c3 = c.derivative(3);
  auto eval = [base, c, c1, c2, c3](const std::array<Jet3, 3>& a) {
    const Jet3& X = a[0];
    const Jet3& Y = a[1];
    const Jet3& T = a[2];
    const Jet3 C1 = c1(T);
    if (!(C1.value() > 0.0)) throw DomainError("conftrans: c' must be positive");
    const Jet3 C2 = c2(T), C3 = c3(T);
    const Jet3 r13 = pow(C1, 1.0 / 3.0), r23 = pow(C1, 2.0 / 3.0);
    const Jet3 inner = base->compose({r13 * X + C2 * Y * Y / (6.0 * r23), r23 * Y, c(T)});
    const Jet3 q = C2 / C1;
    return r23 * inner + C2 * X / (3.0 * C1) + (Y * Y / 18.0) * (3.0 * C3 / C1 - 4.0 * q * q);
  };
  auto guard = [c1](const Point3& p) { return c1(p[2]) > 0.0; };
  return SolutionSpec::custom(eval, guard, "conftrans(" + spec.label() + ")", "c'(t) > 0");
}

SolutionSpec apply(const SolutionSpec& spec, const CoordFreedom& t) {
  return t.kind == CoordFreedom::Kind::Galilean ? apply_coordtrans(spec, t.f, t.g)
                                                : apply_conftrans(spec, t.c);
}

HeavenlyJet heavenly_jet(const SolutionSpec& spec, const Point4& p) {
  const Jet3 u = spec.jet(spatial(p), 1);
  const double ux = u.d(kX), uy = u.d(kY), ut = u.d(kT);
  if (std::abs(ux) < 1e-12) throw DegenerateError("heavenly_jet: u_x = 0 (degenerate monopole)");
  HeavenlyJet h;
  h.theta_qq = 1.0 / ux;
  h.theta_yq = uy / ux + p[3];
  h.theta_yy = uy * uy / ux + u.value() * ux - ut;
  return h;
}

double heavenly_metric_check(const SolutionSpec& spec, const Point4& p) {
  const HeavenlyJet th = heavenly_jet(spec, p);
  const Jet3 u = spec.jet(spatial(p), 1);
  const double z = p[3];
  // Covectors in (x, y, t, z).
  const Vec4 dz(0, 0, 0, 1), dy(0, 1, 0, 0), dt(0, 0, 1, 0);
  const Vec4 dq(-u.d(kX), -u.d(kY), -u.d(kT), -2.0 * z);
  auto sym = [](const Vec4& a, const Vec4& b) -> Mat4 {
    return 0.5 * (a * b.transpose() + b * a.transpose());
  };
  const Mat4 g = 2.0 * (sym(dz, dy) + sym(dq, dt) - th.theta_qq * sym(dz, dz) -
                        th.theta_yy * sym(dt, dt) + 2.0 * th.theta_yq * sym(dz, dt));
  return (g - metric_from_dkp(spec, p)).cwiseAbs().maxCoeff();
}

void to_json(nlohmann::json& j, const CoordFreedom& t) {
  if (t.kind == CoordFreedom::Kind::Galilean)
    j = nlohmann::json{{"kind", "galilean"}, {"f", t.f}, {"g", t.g}};
  else
    j = nlohmann::json{{"kind", "conformal"}, {"c", t.c}};
}

void from_json(const nlohmann::json& j, CoordFreedom& t) {
  const std::string kind = j.at("kind").get<std::string>();
  for (const auto& [key, _] : j.items())
    if (key != "kind" && key != "f" && key != "g" && key != "c")
      throw ConfigError("coordinate freedom: unknown key '" + key + "'");
  if (kind == "galilean") {
    t.kind = CoordFreedom::Kind::Galilean;
    t.f = j.value("f", Poly1());
    t.g = j.value("g", Poly1());
  } else if (kind == "conformal") {
    t.kind = CoordFreedom::Kind::Conformal;
    t.c = j.at("c").get<Poly1>();
  } else {
    throw ConfigError("coordinate freedom: kind must be 'galilean' or 'conformal'");
  }
}

}  // namespace dkpew
