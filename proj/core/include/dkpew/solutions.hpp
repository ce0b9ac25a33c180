#pragma once

// Closed-form dKP solution families and the residual of
//   (u_t - u u_x)_x = u_yy.
// Points are (x, y, t) triples; jets use variable 0 = x, 1 = y, 2 = t.

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dkpew/jet.hpp"
#include "dkpew/poly1.hpp"

namespace dkpew {

using Point3 = std::array<double, 3>;  // (x, y, t)

enum Var3 { kX = 0, kY = 1, kT = 2 };

enum class Family { ConformalEinstein, HyperCR, Hodograph, NoKilling, Flat, Custom };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// u as a function of jet-valued arguments (x, y, t).
using JetEvaluator = std::function<Jet3(const std::array<Jet3, 3>&)>;
using Guard = std::function<bool(const Point3&)>;

class SolutionSpec {
 public:
  Family family() const { return family_; }
  const std::vector<Poly1>& params() const { return params_; }
  const std::string& label() const { return label_; }
  const std::string& guard_description() const { return guard_text_; }

  bool in_guard(const Point3& p) const;

  /// u at a point.
  double u(const Point3& p) const { return jet(p, 0).value(); }

  /// Taylor jet of u at p up to total order `order` (<= 4).
  Jet3 jet(const Point3& p, int order) const;

  /// u evaluated on jet arguments (chain rule for composed maps). The guard is
  /// checked at the values of the arguments.
  Jet3 compose(const std::array<Jet3, 3>& args) const;

  /// A spec given directly by an evaluator. Not serializable.
  static SolutionSpec custom(JetEvaluator eval, Guard guard, std::string label,
                             std::string guard_text = "custom");

  /// u + eps * delta(x, y, t); used to push a solution off-shell.
  SolutionSpec perturbed(double eps, const JetEvaluator& delta,
                         const std::string& tag = "perturbed") const;

 private:
  friend SolutionSpec make_family(Family, const std::vector<Poly1>&);
  Family family_ = Family::Custom;
  std::vector<Poly1> params_;
  std::string label_;
  std::string guard_text_;
  Guard guard_;
  JetEvaluator eval_;
};

/// ConformalEinstein(f1, f2, f3); HyperCR(P); Hodograph(f); NoKilling(A); Flat().
/// Missing trailing ConformalEinstein functions default to zero.
SolutionSpec make_family(Family family, const std::vector<Poly1>& params);
SolutionSpec make_family(const std::string& family_id, const std::vector<Poly1>& params);

/// u = 0 (ConformalEinstein with zero functions).
SolutionSpec zero_solution();

struct JetPoint {
  Point3 point{};
  Jet3 jet;

  /// d^(nx+ny+nt) u / dx^nx dy^ny dt^nt.
  double partial(int nx, int ny, int nt) const { return jet.partial({nx, ny, nt}); }
  int order() const { return jet.order(); }
};

JetPoint eval_jet(const SolutionSpec& spec, const Point3& p, int order);

/// u_xt - u_x^2 - u u_xx - u_yy.
double dkp_residual(const SolutionSpec& spec, const Point3& p);

/// Same expression on a jet of order >= 2.
double dkp_residual(const Jet3& u);

struct HodographResult {
  double u = 0.0;
  bool breaking = false;
  int iterations = 0;
};

/// Newton solve of u = f(x + t u), starting from f(x).
HodographResult hodograph_solve(const Poly1& f, double x, double t);

inline constexpr double kHodographBreakingTol = 1e-6;
inline constexpr double kHodographCausticTol = 1e-10;

void to_json(nlohmann::json& j, const SolutionSpec& s);
SolutionSpec spec_from_json(const nlohmann::json& j);

}  // namespace dkpew
