#pragma once

// Three-dimensional Weyl geometry: a metric h and one-form nu sampled as
// point functions. Chart order is (t, y, x): index 0 = t, 1 = y, 2 = x.

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dkpew/curvature.hpp"
#include "dkpew/poly1.hpp"
#include "dkpew/solutions.hpp"

namespace dkpew {

using Vec3 = VecN<3>;
using Mat3 = MatN<3>;
using Christoffel3 = Christoffel<3>;

enum Chart3 { kCT = 0, kCY = 1, kCX = 2 };

/// (x, y, t) point to chart coordinates (t, y, x) and back.
inline Vec3 to_chart(const Point3& p) { return Vec3(p[2], p[1], p[0]); }
inline Point3 from_chart(const Vec3& q) { return {q[2], q[1], q[0]}; }

struct WeylStructure {
  std::function<Mat3(const Vec3&)> h;
  std::function<Vec3(const Vec3&)> nu;
  std::string gauge;
};

/// h = dy^2 - 4 dx dt - 4u dt^2, nu = -4 u_x dt.
WeylStructure ew_from_dkp(const SolutionSpec& spec);

/// Chart (t, y, s): h = dy^2 + 4(t F(s) - 1) dt ds, nu = 4F/(tF - 1) dt.
WeylStructure dkdv_structure(const Poly1& F);

/// (phi^2 h, nu + 2 d ln phi) for a positive function phi given with its gradient.
WeylStructure conformal_rescale(const WeylStructure& ws,
                                std::function<std::pair<double, Vec3>(const Vec3&)> phi);

Christoffel3 christoffels(const WeylStructure& ws, const Vec3& p, double h = kDefaultFdStep);

/// Every curvature quantity the EW checks need, computed once.
struct WeylCurvature {
  CurvatureAtPoint<3> lc;  // Levi-Civita data of h
  Vec3 nu;
  Mat3 grad_nu;        // (i, j) = nabla_i nu_j
  double div_nu = 0;   // nabla^k nu_k
  double nu_sq = 0;    // nu^k nu_k
  Mat3 chi;            // trace-free symmetric Ricci of the Weyl connection
  double W = 0;        // R + 2 div nu - |nu|^2 / 2
};

WeylCurvature weyl_curvature(const WeylStructure& ws, const Vec3& p, double h = kDefaultFdStep);

/// chi_ij = R_ij + 1/2 nabla_(i nu_j) + 1/4 nu_i nu_j - 1/3 (R + 1/2 div nu + 1/4 |nu|^2) h_ij.
Mat3 ew_residual(const WeylStructure& ws, const Vec3& p, double h = kDefaultFdStep);

double weyl_scalar(const WeylStructure& ws, const Vec3& p, double h = kDefaultFdStep);

struct WeightedVector {
  std::function<Vec3(const Vec3&)> v;  // contravariant components in chart order
  double weight = 0.0;
};

/// (i, j) entry: nabla_i v^j - 1/2 delta_i^j nu_k v^k - (m+1)/2 nu_i v^j + 1/2 nu^j v_i.
Mat3 weighted_constancy_residual(const WeylStructure& ws, const WeightedVector& v, const Vec3& p,
                                 double h = kDefaultFdStep);

/// (r1, r2, r3, r4) with rho = -2 u_xxy / u_xx:
///   r1 = rho_y - 2u_xx, r2 = rho_x, r3 = 2 rho u_x - rho_t + 4u_xy, r4 = rho^2 + 8u_xx.
std::array<double, 4> hyper_cr_residuals(const SolutionSpec& spec, const Point3& p);

using VectorField3 = std::function<Vec3(const Vec3&)>;

struct SymmetryResidual {
  Mat3 conformal;  // L_K h - psi h
  Vec3 gauge;      // L_K nu - d psi
  double psi = 0;
  double max_abs() const;
};

SymmetryResidual symmetry_residual(const WeylStructure& ws, const VectorField3& K, const Vec3& p,
                                   double h = kDefaultFdStep);

enum class HyperCrGenerator { K1, K2, K3, K4, K4Printed, K2Plus3K3 };

/// Symmetry generators of the hyper-CR family, in chart order (t, y, x):
///   K1 = d_t, K2 = y/2 d_y + x d_x, K3 = y/2 d_y + t d_t,
///   K4 = 4ty d_y + (y^2 + 2xt) d_x + 3t^2 d_t.
/// K4Printed carries ty d_y in place of 4ty d_y and is not a symmetry.
VectorField3 hyper_cr_generator(HyperCrGenerator g);

struct GeodesicState {
  double s = 0;
  Vec3 x;
  Vec3 xdot;
};

/// RK4 for x'' = -Gamma(x', x') + x' (nu . x') - 1/2 |x'|^2 nu^#.
/// With weyl = false the nu terms are dropped (Levi-Civita geodesic of h).
std::vector<GeodesicState> weyl_geodesic(const WeylStructure& ws, const Vec3& x0,
                                         const Vec3& xdot0, double s_span, int steps,
                                         bool weyl = true, double h = kDefaultFdStep);

}  // namespace dkpew
