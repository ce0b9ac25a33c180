#include "dkpew/solutions.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dkpew/errors.hpp"

namespace dkpew {

std::string family_name(Family f) {
  switch (f) {
    case Family::ConformalEinstein: return "conformal-einstein";
    case Family::HyperCR: return "hyper-cr";
    case Family::Hodograph: return "hodograph";
    case Family::NoKilling: return "no-killing";
    case Family::Flat: return "flat";
    case Family::Custom: return "custom";
  }
  return "custom";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::ConformalEinstein, Family::HyperCR, Family::Hodograph,
                   Family::NoKilling, Family::Flat})
    if (family_name(f) == name) return f;
  throw ConfigError("unknown family id '" + name + "'");
}

bool SolutionSpec::in_guard(const Point3& p) const {
  for (double v : p)
    if (!std::isfinite(v)) return false;
  return !guard_ || guard_(p);
}

Jet3 SolutionSpec::compose(const std::array<Jet3, 3>& args) const {
  const Point3 p{args[0].value(), args[1].value(), args[2].value()};
  if (!in_guard(p)) {
    std::ostringstream os;
    os << label_ << ": point (" << p[0] << ", " << p[1] << ", " << p[2]
       << ") outside domain guard [" << guard_text_ << "]";
    throw DomainError(os.str());
  }
  Jet3 r = eval_(args);
  if (!std::isfinite(r.value())) throw DomainError(label_ + ": non-finite value inside guard");
  return r;
}

Jet3 SolutionSpec::jet(const Point3& p, int order) const {
  return compose({Jet3::variable(kX, p[0], order), Jet3::variable(kY, p[1], order),
                  Jet3::variable(kT, p[2], order)});
}

SolutionSpec SolutionSpec::custom(JetEvaluator eval, Guard guard, std::string label,
                                  std::string guard_text) {
  SolutionSpec s;
  s.family_ = Family::Custom;
  s.eval_ = std::move(eval);
  s.guard_ = std::move(guard);
  s.label_ = std::move(label);
  s.guard_text_ = std::move(guard_text);
  return s;
}

SolutionSpec SolutionSpec::perturbed(double eps, const JetEvaluator& delta,
                                     const std::string& tag) const {
  auto base = std::make_shared<SolutionSpec>(*this);
  return custom([base, eps, delta](const std::array<Jet3, 3>& a) {
                  return base->compose(a) + eps * delta(a);
                },
                [base](const Point3& p) { return base->in_guard(p); }, label_ + "+" + tag,
                guard_text_);
}

HodographResult hodograph_solve(const Poly1& f, double x, double t) {
  const Poly1 fp = f.derivative();
  HodographResult r;
  double u = f(x);
  for (int it = 1; it <= 100; ++it) {
    const double s = x + t * u;
    const double g = u - f(s);
    r.iterations = it;
    if (std::abs(g) < 1e-13) {
      r.u = u;
      r.breaking = std::abs(1.0 - t * fp(s)) < kHodographBreakingTol;
      return r;
    }
    const double dg = 1.0 - t * fp(s);
    // 1 - tF' = 0 at the iterate: the characteristic map folds here
    if (std::abs(dg) < kHodographCausticTol) throw CausticError("hodograph_solve: 1 - tF' vanishes");
    u -= g / dg;
    if (!std::isfinite(u)) throw ConvergenceError("hodograph_solve: Newton diverged");
  }
  // Near a caustic Newton converges only linearly; report the breaking state
  // instead of a bare failure when that is the cause.
  if (std::abs(1.0 - t * fp(x + t * u)) < kHodographBreakingTol) {
    r.u = u;
    r.breaking = true;
    return r;
  }
  throw ConvergenceError("hodograph_solve: no convergence after 100 iterations");
}

namespace {

Jet3 hodograph_jet(const Poly1& f, const std::array<Jet3, 3>& a) {
  const double x = a[0].value(), t = a[2].value();
  const HodographResult h = hodograph_solve(f, x, t);
  const Poly1 fp = f.derivative();
  if (std::abs(1.0 - t * fp(x + t * h.u)) < kHodographCausticTol)
    throw CausticError("hodograph: 1 - tF vanishes at the requested point");
  const int order = std::min(a[0].order(), a[2].order());
  // Newton in jet arithmetic; each pass at least doubles the number of correct orders.
  Jet3 u = Jet3::constant(h.u, order);
  for (int it = 0; it < 4; ++it) {
    const Jet3 s = a[0] + a[2] * u;
    u = u - (u - f(s)) / (1.0 - a[2] * fp(s));
  }
  return u;
}

}  // namespace

SolutionSpec make_family(Family family, const std::vector<Poly1>& params) {
  SolutionSpec s;
  s.family_ = family;
  s.params_ = params;
  s.label_ = family_name(family);
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw ConfigError(family_name(family) + ": expected " + std::to_string(n) +
                        " parameter function(s), got " + std::to_string(params.size()));
  };
  switch (family) {
    case Family::ConformalEinstein: {
      if (params.size() > 3) throw ConfigError("conformal-einstein: at most 3 functions");
      std::vector<Poly1> f = params;
      while (f.size() < 3) f.push_back(Poly1());
      s.params_ = f;
      // u = x f1 + (f1' - f1^2) y^2 / 2 + f2 y + f3, all f_i functions of t.
      const Poly1 f1 = f[0], f1p = f[0].derivative(), f2 = f[1], f3 = f[2];
      s.eval_ = [f1, f1p, f2, f3](const std::array<Jet3, 3>& a) {
        const Jet3& x = a[0];
        const Jet3& y = a[1];
        const Jet3& t = a[2];
        const Jet3 F1 = f1(t);
        return x * F1 + 0.5 * (f1p(t) - F1 * F1) * y * y + f2(t) * y + f3(t);
      };
      s.guard_text_ = "all (x, y, t)";
      break;
    }
    case Family::HyperCR: {
      need(1);
      const Poly1 P = params[0];
      s.eval_ = [P](const std::array<Jet3, 3>& a) {
        const Jet3 iy = reciprocal(a[1]);
        return -(a[0] * a[0]) * iy * iy + P(a[2]) * iy;
      };
      s.guard_ = [](const Point3& p) { return std::abs(p[1]) > 1e-6; };
      s.guard_text_ = "|y| > 1e-6";
      break;
    }
    case Family::Hodograph: {
      need(1);
      const Poly1 f = params[0];
      s.eval_ = [f](const std::array<Jet3, 3>& a) { return hodograph_jet(f, a); };
      s.guard_text_ = "all (x, y, t) away from the caustic 1 - t f'(x + t u) = 0";
      break;
    }
    case Family::NoKilling: {
      need(1);
      const Poly1 A = params[0], Ap = params[0].derivative();
      s.eval_ = [A, Ap](const std::array<Jet3, 3>& a) {
        const Jet3& x = a[0];
        const Jet3& y = a[1];
        const Jet3& t = a[2];
        const Jet3 it = reciprocal(t);
        return t * Ap(t) - x * it + y * it * sqrt(x * it + A(t));
      };
      s.guard_ = [A](const Point3& p) {
        return std::abs(p[2]) > 1e-6 && p[0] / p[2] + A(p[2]) > 1e-12;
      };
      s.guard_text_ = "|t| > 1e-6 and x/t + A(t) > 0";
      break;
    }
    case Family::Flat: {
      need(0);
      s.eval_ = [](const std::array<Jet3, 3>& a) { return -a[0] / a[2]; };
      s.guard_ = [](const Point3& p) { return std::abs(p[2]) > 1e-6; };
      s.guard_text_ = "|t| > 1e-6";
      break;
    }
    case Family::Custom:
      throw ConfigError("make_family: custom specs are built with SolutionSpec::custom");
  }
  return s;
}

SolutionSpec make_family(const std::string& family_id, const std::vector<Poly1>& params) {
  return make_family(family_from_name(family_id), params);
}

SolutionSpec zero_solution() { return make_family(Family::ConformalEinstein, {}); }

JetPoint eval_jet(const SolutionSpec& spec, const Point3& p, int order) {
  return {p, spec.jet(p, order)};
}

double dkp_residual(const Jet3& u) {
  const double ux = u.partial({1, 0, 0});
  return u.partial({1, 0, 1}) - ux * ux - u.value() * u.partial({2, 0, 0}) -
         u.partial({0, 2, 0});
}

double dkp_residual(const SolutionSpec& spec, const Point3& p) {
  return dkp_residual(spec.jet(p, 2));
}

void to_json(nlohmann::json& j, const SolutionSpec& s) {
  if (s.family() == Family::Custom)
    throw ConfigError("custom solution specs cannot be serialized");
  j = nlohmann::json{{"family", family_name(s.family())},
                     {"params", s.params()},
                     {"guard", s.guard_description()}};
}

SolutionSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("solution spec must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "family" && key != "params" && key != "guard")
      throw ConfigError("solution spec: unknown key '" + key + "'");
  if (!j.contains("family")) throw ConfigError("solution spec: missing 'family'");
  std::vector<Poly1> params;
  if (j.contains("params")) params = j.at("params").get<std::vector<Poly1>>();
  return make_family(j.at("family").get<std::string>(), params);
}

}  // namespace dkpew
