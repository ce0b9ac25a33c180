#pragma once

// Independent numerical oracles for the tests: plain central differences with
// Richardson extrapolation, written without the library's stencils.

#include <array>
#include <functional>

namespace oracle {

template <std::size_t N>
using Fn = std::function<double(const std::array<double, N>&)>;

// d f / d x_dir, error O(h^4) via Richardson on the 2-point stencil.
template <std::size_t N>
double d1(const Fn<N>& f, std::array<double, N> p, std::size_t dir, double h = 1e-3) {
  auto c = [&](double s) {
    auto a = p, b = p;
    a[dir] += s;
    b[dir] -= s;
    return (f(a) - f(b)) / (2 * s);
  };
  return (4 * c(h / 2) - c(h)) / 3;
}

template <std::size_t N>
double d2(const Fn<N>& f, std::array<double, N> p, std::size_t i, std::size_t j,
          double h = 1e-3) {
  Fn<N> g = [&](const std::array<double, N>& q) { return d1<N>(f, q, j, h); };
  return d1<N>(g, p, i, h);
}

}  // namespace oracle
