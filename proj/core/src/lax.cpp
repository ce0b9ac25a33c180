#include "dkpew/lax.hpp"

#include <Eigen/Dense>

namespace dkpew {

namespace {

template <int D>
SpectralPoly<D> constant_poly(std::initializer_list<double> cs, int order) {
  SpectralPoly<D> p;
  for (double c : cs) p.push_back(Jet<D>::constant(c, order));
  return p;
}

}  // namespace

LaxPair3 dkp_lax_pair(const SolutionSpec& spec, const Point3& p, int order) {
  const Jet3 u = spec.jet(p, order);
  const int k = order;
  LaxPair3 L;
  L.L0.c[kX] = {-u};
  L.L0.c[kY] = constant_poly<3>({0.0, -1.0}, k);
  L.L0.c[kT] = constant_poly<3>({1.0}, k);
  L.L0.c[3] = {u.diff(kY)};
  L.L1.c[kX] = constant_poly<3>({0.0, -1.0}, k);
  L.L1.c[kY] = constant_poly<3>({1.0}, k);
  L.L1.c[3] = {u.diff(kX)};
  return L;
}

double lax_bracket_defect(const SolutionSpec& spec, const Point3& p, double c) {
  const LaxPair3 L = dkp_lax_pair(spec, p, 2);
  const LaxField3 B = commutator(L.L0, L.L1);
  const Jet3 ux = spec.jet(p, 1).diff(kX);
  return combine(B, L.L1, SpectralPoly<3>{c * ux}).max_abs();
}

double lax_identity_residual(const SolutionSpec& spec, const Point3& p) {
  return lax_bracket_defect(spec, p, -1.0);
}

HkFrame hk_lift(const SolutionSpec& spec, const Point4& p, int order) {
  const Jet4 u = extend_to_4(spec.jet(spatial(p), order));
  const Jet4 z = Jet4::variable(kZ4, p[3], order);
  const Jet4 ux = u.diff(kX4), uy = u.diff(kY4);
  const Jet4 one = Jet4::constant(1.0, order);
  HkFrame f;
  f.n10.c[kX4] = {-z};
  f.n10.c[kY4] = {one};
  f.n10.c[kZ4] = {ux};
  f.n11.c[kX4] = {one};
  f.n00.c[kT4] = {one};
  f.n00.c[kX4] = {-(u + z * z)};
  f.n00.c[kZ4] = {uy + ux * z};
  f.n01.c[kY4] = {one};
  f.n01.c[kX4] = {z};
  return f;
}

LaxField4 hk_lax_bracket(const SolutionSpec& spec, const Point4& p) {
  const HkFrame f = hk_lift(spec, p, 2);
  const SpectralPoly<4> minus_lambda = constant_poly<4>({0.0, -1.0}, 2);
  const LaxField4 L0 = combine(f.n00, f.n01, minus_lambda);
  const LaxField4 L1 = combine(f.n10, f.n11, minus_lambda);
  return commutator(L0, L1);
}

double volume_pairing(const SolutionSpec& spec, const Point4& p) {
  const HkFrame f = hk_lift(spec, p, 1);
  const std::array<const LaxField4*, 4> rows{&f.n00, &f.n10, &f.n01, &f.n11};
  const int cols[4] = {kT4, kY4, kX4, kZ4};
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = rows[r]->coeff(cols[c], 0);
  return m.determinant();
}

std::array<double, 4> frame_divergences(const SolutionSpec& spec, const Point4& p) {
  const HkFrame f = hk_lift(spec, p, 2);
  const std::array<const LaxField4*, 4> fields{&f.n00, &f.n01, &f.n10, &f.n11};
  std::array<double, 4> div{};
  for (int n = 0; n < 4; ++n)
    for (int i = 0; i < 4; ++i)
      if (!fields[n]->c[i].empty()) div[n] += fields[n]->c[i][0].d(i);
  return div;
}

}  // namespace dkpew
