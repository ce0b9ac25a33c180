#pragma once

// Levi-Civita connection and curvature of a metric given only as a point
// function, by 4th-order central differences. Curvature differentiates
// sampled Christoffel symbols (nested differences), never h twice directly.
//
// Conventions: G(i, j, k) = Gamma^i_jk,
//   R^i_jkl = d_k G^i_lj - d_l G^i_kj + G^i_km G^m_lj - G^i_lm G^m_kj,
//   Ric_jl  = R^k_jkl.

#include <array>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "dkpew/errors.hpp"

namespace dkpew {

inline constexpr double kDefaultFdStep = 1e-2;

template <int N>
using VecN = Eigen::Matrix<double, N, 1>;
template <int N>
using MatN = Eigen::Matrix<double, N, N>;
template <int N>
using MetricFn = std::function<MatN<N>(const VecN<N>&)>;

/// 4th-order central difference of f along coordinate `dir`.
template <int N, class F>
auto central_diff(const F& f, const VecN<N>& p, int dir, double h) {
  VecN<N> q = p;
  q[dir] = p[dir] - 2 * h;
  auto m2 = f(q);
  q[dir] = p[dir] - h;
  auto m1 = f(q);
  q[dir] = p[dir] + h;
  auto p1 = f(q);
  q[dir] = p[dir] + 2 * h;
  auto p2 = f(q);
  using R = decltype(m2);
  R out = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
  return out;
}

template <int N>
class Christoffel {
 public:
  using Flat = Eigen::Matrix<double, N * N * N, 1>;
  Christoffel() : g_(Flat::Zero()) {}
  explicit Christoffel(const Flat& g) : g_(g) {}

  double operator()(int i, int j, int k) const { return g_[(i * N + j) * N + k]; }
  double& operator()(int i, int j, int k) { return g_[(i * N + j) * N + k]; }
  const Flat& flat() const { return g_; }

  double max_abs() const { return g_.cwiseAbs().maxCoeff(); }

 private:
  Flat g_;
};

template <int N>
MatN<N> checked_inverse(const MatN<N>& g) {
  const double det = g.determinant();
  if (!std::isfinite(det) || std::abs(det) < 1e-14)
    throw DegenerateError("metric is singular at the requested point");
  return g.inverse();
}

/// Gamma from the metric at p and its first derivatives dg[k] = d_k g.
template <int N>
Christoffel<N> christoffel_from(const MatN<N>& g, const std::array<MatN<N>, N>& dg) {
  const MatN<N> gi = checked_inverse<N>(g);
  Christoffel<N> G;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = j; k < N; ++k) {
        double s = 0.0;
        for (int l = 0; l < N; ++l) s += gi(i, l) * (dg[j](l, k) + dg[k](j, l) - dg[l](j, k));
        G(i, j, k) = 0.5 * s;
        G(i, k, j) = 0.5 * s;
      }
  return G;
}

template <int N>
std::array<MatN<N>, N> metric_gradient_fd(const MetricFn<N>& g, const VecN<N>& p, double h) {
  std::array<MatN<N>, N> dg;
  for (int k = 0; k < N; ++k) dg[k] = central_diff<N>(g, p, k, h);
  return dg;
}

template <int N>
Christoffel<N> christoffel_fd(const MetricFn<N>& g, const VecN<N>& p, double h = kDefaultFdStep) {
  return christoffel_from<N>(g(p), metric_gradient_fd<N>(g, p, h));
}

/// Riemann tensor R^i_jkl, flattened as ((i*N + j)*N + k)*N + l.
template <int N>
struct Riemann {
  Eigen::Matrix<double, N * N * N * N, 1> r;
  double operator()(int i, int j, int k, int l) const { return r[((i * N + j) * N + k) * N + l]; }
  double max_abs() const { return r.cwiseAbs().maxCoeff(); }
};

template <int N>
struct CurvatureAtPoint {
  MatN<N> metric;
  MatN<N> inverse;
  Christoffel<N> gamma;
  Riemann<N> riemann;
  MatN<N> ricci;
  double scalar = 0.0;
};

template <int N>
CurvatureAtPoint<N> curvature_fd(const MetricFn<N>& g, const VecN<N>& p, double h = kDefaultFdStep) {
  auto gamma_at = [&](const VecN<N>& q) -> typename Christoffel<N>::Flat {
    return christoffel_fd<N>(g, q, h).flat();
  };
  std::array<Christoffel<N>, N> dG;
  for (int k = 0; k < N; ++k) dG[k] = Christoffel<N>(central_diff<N>(gamma_at, p, k, h));

  CurvatureAtPoint<N> c;
  c.metric = g(p);
  c.inverse = checked_inverse<N>(c.metric);
  c.gamma = christoffel_fd<N>(g, p, h);
  const auto& G = c.gamma;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
          double v = dG[k](i, l, j) - dG[l](i, k, j);
          for (int m = 0; m < N; ++m) v += G(i, k, m) * G(m, l, j) - G(i, l, m) * G(m, k, j);
          c.riemann.r[((i * N + j) * N + k) * N + l] = v;
        }
  c.ricci.setZero();
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l)
      for (int k = 0; k < N; ++k) c.ricci(j, l) += c.riemann(k, j, k, l);
  // Symmetrize away the FD asymmetry of the nested differences.
  c.ricci = 0.5 * (c.ricci + c.ricci.transpose()).eval();
  c.scalar = (c.inverse.cwiseProduct(c.ricci)).sum();
  return c;
}

}  // namespace dkpew
