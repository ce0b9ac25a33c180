#pragma once

// The two-form Pi = dx^dl + dy^dH2 + dt^dH3 on (x, y, t, l), with
// H2 = l^2/2 + u and H3 = l^3/3 + l u + w, its simplicity obstruction, the
// Darboux expansion P, Q, and incidence of the flat mini-twistor curves
// xi = x + l y + l^2 t. Here l is the spectral parameter lambda~.

#include <array>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "dkpew/jet.hpp"
#include "dkpew/laurent.hpp"
#include "dkpew/solutions.hpp"
#include "dkpew/weyl.hpp"

namespace dkpew {

/// Component pairs in storage order: (x,y), (x,t), (x,l), (y,t), (y,l), (t,l).
inline constexpr std::array<std::array<int, 2>, 6> kPiPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

template <class T>
using TwoForm4L = std::array<Laurent<T>, 6>;

using PiForm = TwoForm4L<double>;

/// Pi with coefficients from the first derivatives of u and w (jets of order >= 1).
PiForm build_pi(const Jet3& u, const Jet3& w);

/// Coefficient of dx^dy^dt^dl in Pi^Pi, a polynomial in l.
Laurent<double> pi_wedge_pi(const PiForm& pi);

/// (w_x - u_y, u_t - u u_x - w_y), read off Pi^Pi = 2[(u_t - u u_x - w_y) + l (w_x - u_y)].
std::array<double, 2> simplicity_residual(const Jet3& u, const Jet3& w);

/// max |d Pi| from exact derivatives of the assembled components (u, w jets of order >= 2).
double pi_closure_residual(const Jet3& u, const Jet3& w);

/// w with w_x = u_y and w_y = u_t - u u_x along x = x0, by Gauss-Legendre quadrature
/// from the base point (x0, y0). Needs u of order `order` + 1.
Jet3 potential_w(const SolutionSpec& spec, const Point3& p, int order = 1, double x0 = 1.0,
                 double y0 = 1.0);

/// Coefficient chain of Q = l + sum u_i l^-i and P = sum w_i Q^-i + x + Q y + Q^2 t.
/// u[i - 1] holds u_i; jets of order >= 1.
struct DarbouxChain {
  std::vector<Jet3> u, w;
};

/// The chain that makes dP^dQ = Pi through order l^-1 on dKP solutions:
/// u_1 = u, u_2 = w, u_3 with d u_3 = (u_t - 2u u_x) dx + (w_t - 2u u_y) dy, w_1 = 0,
/// everything else zero.
DarbouxChain onshell_darboux_chain(const Jet3& u, const Jet3& w, int N);

struct DarbouxReport {
  int truncation = 0;
  std::map<int, double> residual_by_order;  // power of l -> max |dP^dQ - Pi| coefficient
  double max_over(int lo, int hi) const;
};

/// Expands dP^dQ - Pi at the point p and reports each order from l^2 down to l^-(N-2).
/// u, w are the Pi data; the chain carries the series coefficients.
DarbouxReport darboux_check(const Point3& p, const Jet3& u, const Jet3& w,
                            const DarbouxChain& chain, int N = 6);

enum class CausalClass { SpaceLike, Null, TimeLike };
std::string causal_name(CausalClass c);

struct Intersection {
  std::vector<std::complex<double>> lambda;
  CausalClass causal = CausalClass::Null;
  double h = 0;  // h(R, R) = dy^2 - 4 dx dt
};

/// Points in chart order (t, y, x). Roots (2R2 -+ sqrt h(R,R)) / (2R1) with R = p1 - p2;
/// two real roots: space-like, double root: null, complex pair: time-like.
/// For R1 = 0 the single finite root -R3/R2 is reported (none if R2 = 0).
Intersection curve_intersection(const Vec3& p1, const Vec3& p2);

/// Roots of R1 l^2 + R2 l + R3 = 0, the parameters where xi(p1, l) = xi(p2, l).
Intersection incidence_roots(const Vec3& p1, const Vec3& p2);

/// xi = x + l y + l^2 t at a chart point (t, y, x).
std::complex<double> incidence_eval(const Vec3& p, std::complex<double> lambda);

}  // namespace dkpew
