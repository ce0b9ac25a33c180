#pragma once

// Vector fields on (coordinates) x (spectral parameter) whose coefficients are
// polynomials in the spectral parameter with jet-valued coefficients. The
// bracket is exact in the spectral parameter; spatial derivatives come from
// the jets.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "dkpew/errors.hpp"
#include "dkpew/hyperkahler.hpp"
#include "dkpew/jet.hpp"
#include "dkpew/solutions.hpp"

namespace dkpew {

inline constexpr int kMaxSpectralDegree = 3;

/// Polynomial in the spectral parameter; coefficient k multiplies lambda^k.
template <int D>
using SpectralPoly = std::vector<Jet<D>>;

/// D coordinate directions followed by the spectral direction (index D).
template <int D>
struct SpectralField {
  std::array<SpectralPoly<D>, D + 1> c;

  int degree() const {
    int d = -1;
    for (const auto& p : c) d = std::max(d, static_cast<int>(p.size()) - 1);
    return d;
  }

  /// Numeric coefficient of lambda^k in direction dir.
  double coeff(int dir, int k) const {
    const auto& p = c[dir];
    return k < static_cast<int>(p.size()) ? p[k].value() : 0.0;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& p : c)
      for (const auto& j : p) m = std::max(m, std::abs(j.value()));
    return m;
  }
};

namespace detail {

template <int D>
SpectralPoly<D> poly_mul(const SpectralPoly<D>& a, const SpectralPoly<D>& b) {
  if (a.empty() || b.empty()) return {};
  int order = Jet<D>::kMaxOrder;
  for (const auto& j : a) order = std::min(order, j.order());
  for (const auto& j : b) order = std::min(order, j.order());
  SpectralPoly<D> r(a.size() + b.size() - 1, Jet<D>::constant(0.0, order));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) r[i + k] += a[i] * b[k];
  return r;
}

template <int D>
void poly_add(SpectralPoly<D>& acc, const SpectralPoly<D>& b, double s) {
  if (acc.size() < b.size()) {
    int order = b.empty() ? Jet<D>::kMaxOrder : b[0].order();
    for (const auto& j : acc) order = std::min(order, j.order());
    acc.resize(b.size(), Jet<D>::constant(0.0, order));
  }
  for (std::size_t k = 0; k < b.size(); ++k) acc[k] += s * b[k];
}

template <int D>
SpectralPoly<D> poly_diff(const SpectralPoly<D>& a, int dir) {
  SpectralPoly<D> r;
  if (dir == D) {  // spectral derivative, exact
    for (std::size_t k = 1; k < a.size(); ++k) r.push_back(static_cast<double>(k) * a[k]);
  } else {
    for (const auto& j : a) r.push_back(j.diff(dir));
  }
  return r;
}

}  // namespace detail

/// [V, W]^i = V^j d_j W^i - W^j d_j V^i. Output jets lose one order.
template <int D>
SpectralField<D> commutator(const SpectralField<D>& V, const SpectralField<D>& W) {
  SpectralField<D> r;
  for (int i = 0; i <= D; ++i) {
    SpectralPoly<D> acc;
    for (int j = 0; j <= D; ++j) {
      detail::poly_add(acc, detail::poly_mul(V.c[j], detail::poly_diff(W.c[i], j)), 1.0);
      detail::poly_add(acc, detail::poly_mul(W.c[j], detail::poly_diff(V.c[i], j)), -1.0);
    }
    // Trailing zero coefficients do not count toward the degree.
    while (!acc.empty()) {
      bool zero = true;
      for (double v : acc.back().raw())
        if (v != 0.0) zero = false;
      if (!zero) break;
      acc.pop_back();
    }
    if (static_cast<int>(acc.size()) - 1 > kMaxSpectralDegree)
      throw DomainError("commutator: spectral degree exceeds 3");
    r.c[i] = std::move(acc);
  }
  return r;
}

/// V + b(lambda) W for a spectral polynomial b.
template <int D>
SpectralField<D> combine(const SpectralField<D>& V, const SpectralField<D>& W,
                         const SpectralPoly<D>& b) {
  SpectralField<D> r = V;
  for (int i = 0; i <= D; ++i) detail::poly_add(r.c[i], detail::poly_mul(b, W.c[i]), 1.0);
  return r;
}

using LaxField3 = SpectralField<3>;  // (x, y, t, lambda~)
using LaxField4 = SpectralField<4>;  // (x, y, t, z, lambda)

struct LaxPair3 {
  LaxField3 L0, L1;
};

/// L0' = d_t - u d_x - lambda~ d_y + u_y d_lambda~,  L1' = d_y - lambda~ d_x + u_x d_lambda~.
/// `order` is the jet order of u (>= 2 for exact brackets).
LaxPair3 dkp_lax_pair(const SolutionSpec& spec, const Point3& p, int order = 2);

/// max |coefficient| of [L0', L1'] + c u_x L1' over all directions and powers.
double lax_bracket_defect(const SolutionSpec& spec, const Point3& p, double c);

/// Defect of [L0', L1'] = u_x L1', the form of the identity that holds exactly on
/// dKP solutions with the bracket above; the d_lambda~ slot carries the dKP residual.
double lax_identity_residual(const SolutionSpec& spec, const Point3& p);

struct HkFrame {
  LaxField4 n00, n01, n10, n11;  // nabla_{AA'}, no spectral dependence
};

/// nabla_10' = d_y - z d_x + u_x d_z, nabla_11' = d_x,
/// nabla_00' = d_t - (u + z^2) d_x + (u_y + u_x z) d_z, nabla_01' = d_y + z d_x.
HkFrame hk_lift(const SolutionSpec& spec, const Point4& p, int order = 2);

/// [L0, L1] with L0 = nabla_00' - lambda nabla_01', L1 = nabla_10' - lambda nabla_11'.
LaxField4 hk_lax_bracket(const SolutionSpec& spec, const Point4& p);

/// dt^dy^dx^dz(nabla_00', nabla_10', nabla_01', nabla_11').
double volume_pairing(const SolutionSpec& spec, const Point4& p);

/// Divergences of the four frame fields (coordinate volume).
std::array<double, 4> frame_divergences(const SolutionSpec& spec, const Point4& p);

}  // namespace dkpew
