#pragma once

// The 4D hyper-Kaehler metric built from a dKP solution, its null tetrad and
// self-dual two-forms, monopole data, and the reduction back to 3D.
// 4D points are (x, y, t, z).

#include <array>
#include <functional>

#include "dkpew/forms.hpp"
#include "dkpew/poly1.hpp"
#include "dkpew/solutions.hpp"
#include "dkpew/weyl.hpp"

namespace dkpew {

using Point4 = std::array<double, 4>;  // (x, y, t, z)
enum Var4 { kX4 = 0, kY4 = 1, kT4 = 2, kZ4 = 3 };

inline Point3 spatial(const Point4& p) { return {p[0], p[1], p[2]}; }
inline Vec4 to_vec(const Point4& p) { return Vec4(p[0], p[1], p[2], p[3]); }
inline Point4 to_point(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

/// Metric entries as jets in (x, y, t); the metric does not depend on z.
using Metric4Jet = std::array<std::array<Jet3, 4>, 4>;

/// g = (u_x/2)(dy^2 - 4 dx dt - 4u dt^2) - (2/u_x)(dz - (u_x/2) dy - u_y dt)^2
/// from a jet of u (order k gives metric jets of order k - 1).
Metric4Jet metric_jet_from_dkp(const Jet3& u);
Mat4 metric_from_dkp(const SolutionSpec& spec, const Point4& p);
MetricFn<4> metric_field(const SolutionSpec& spec);

struct Tetrad {
  Vec4 e00, e01, e10, e11;  // e^{AA'} as covectors
};

struct SdForms {
  Form4 s00{2}, s01{2}, s11{2};  // Sigma^{0'0'}, Sigma^{0'1'}, Sigma^{1'1'}
};

Tetrad tetrad(const SolutionSpec& spec, const Point4& p);
SdForms sd_forms(const SolutionSpec& spec, const Point4& p);

/// 2(e00 e11 - e01 e10) with symmetrized products.
Mat4 metric_from_tetrad(const Tetrad& e);

/// Single 4-form component of -2 S00^S11 - S01^S01.
double wedge_identity_residual(const SdForms& s);

enum class SdForm { S00, S01, S11 };
FormField4 sd_form_field(const SolutionSpec& spec, SdForm which);

/// max |d Sigma| over the four 3-form components (finite differences).
double closure_residual(const SolutionSpec& spec, SdForm which, const Point4& p,
                        double h = kDefaultFdStep);

/// Monopole pair on the 3D space: V and alpha = (alpha_x, alpha_y, alpha_t) as jets.
struct Monopole {
  std::function<Jet3(const Point3&)> V;
  std::function<std::array<Jet3, 3>(const Point3&)> alpha;
};

/// V = u_x/2, alpha = -(u_x/2) dy - u_y dt.
Monopole canonical_monopole(const SolutionSpec& spec);

/// *_h(dV + nu V / 2) - d alpha, components (dx^dy, dx^dt, dy^dt).
std::array<double, 3> monopole_residual(const SolutionSpec& spec, const Monopole& m,
                                        const Point3& p);

/// V_yy - V_xt + u V_xx + 2 u_x V_x + u_xx V; V must be a jet of order >= 2.
double linearized_dkp_apply(const SolutionSpec& spec, const std::function<Jet3(const Point3&)>& V,
                            const Point3& p);

struct JonesTodResult {
  Mat3 h_reduced;   // chart order (t, y, x)
  Vec3 nu_reduced;
  Mat3 h_ew;
  Vec3 nu_ew;
  double factor = 0;               // h_reduced = factor * h_ew
  double proportionality_gap = 0;  // max |h_reduced - factor h_ew|
  double nu_gauge_gap = 0;         // max |nu_reduced - nu_ew - 2 d ln phi|, phi^2 = |factor|
};

/// Reduction along K = d_z on the section z = 0.
JonesTodResult jones_tod_reduce(const SolutionSpec& spec, const Point3& p);

/// Frozen relation between the reduced and the dKP Weyl metric: -u_x^2 / 4.
double jones_tod_expected_factor(double ux);

struct NullKvResult {
  Mat4 g;  // chart (w, t, z, y)
  double ricci_max = 0;
};

/// g = dw dt + dz dy + (t - F(w)) dz^2 with its finite-difference Ricci tensor.
NullKvResult null_kv_metric(const Poly1& F, const Point4& p, double h = kDefaultFdStep);

/// The flat example u = -x/t pulled back by x = X t + z^2 t / 2, y = Y - z t.
/// Input and output chart (X, Y, t, z).
Mat4 flat_example_pullback(const Point4& XYtz);

}  // namespace dkpew
