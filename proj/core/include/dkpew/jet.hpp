#pragma once

// Truncated multivariate Taylor arithmetic ("jets").
//
// A Jet<D> holds the Taylor coefficients of a smooth function of D variables
// about a base point, truncated at total degree `order()` (at most kMaxOrder).
// Arithmetic on jets is exact differentiation of the composed expression, so
// closed-form solution families get their partial derivatives without any
// finite-difference noise.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dkpew {

template <int D>
class Jet {
 public:
  static constexpr int kMaxOrder = 4;
  using Exponent = std::array<int, D>;

  /// Number of monomials of total degree <= n in D variables.
  static constexpr int monomial_count(int n) {
    // binom(n + D, D)
    long long r = 1;
    for (int i = 1; i <= D; ++i) r = r * (n + i) / i;
    return static_cast<int>(r);
  }
  static constexpr int kSize = monomial_count(kMaxOrder);

  Jet() : order_(kMaxOrder) { c_.fill(0.0); }

  static Jet constant(double value, int order = kMaxOrder) {
    Jet j;
    j.order_ = checked_order(order);
    j.c_[0] = value;
    return j;
  }

  /// The coordinate function x_var seeded at `value`.
  static Jet variable(int var, double value, int order = kMaxOrder) {
    Jet j = constant(value, order);
    if (var < 0 || var >= D) throw std::out_of_range("Jet::variable: bad variable index");
    if (j.order_ >= 1) j.c_[1 + var] = 1.0;
    return j;
  }

  int order() const { return order_; }
  double value() const { return c_[0]; }

  /// Taylor coefficient of the monomial with exponent `e`.
  double coeff(const Exponent& e) const {
    int deg = 0;
    for (int v : e) deg += v;
    if (deg > order_) throw std::out_of_range("Jet::coeff: degree exceeds jet order");
    return c_[tables().index_of(e)];
  }

  /// Partial derivative d^|e| f / dx^e at the base point.
  double partial(const Exponent& e) const {
    double fact = 1.0;
    for (int v : e)
      for (int k = 2; k <= v; ++k) fact *= k;
    return coeff(e) * fact;
  }

  /// Convenience for first derivatives.
  double d(int var) const {
    Exponent e{};
    e[var] = 1;
    return partial(e);
  }

  /// Jet of the partial derivative with respect to `var`; order drops by one.
  Jet diff(int var) const {
    if (order_ == 0) throw std::domain_error("Jet::diff: cannot differentiate an order-0 jet");
    const auto& t = tables();
    Jet r = constant(0.0, order_ - 1);
    for (int m = 0; m < t.count(order_ - 1); ++m) {
      Exponent e = t.exponents[m];
      e[var] += 1;
      r.c_[m] = c_[t.index_of(e)] * e[var];
    }
    return r;
  }

  /// Drop terms above `order`.
  Jet truncated(int order) const {
    Jet r = *this;
    r.order_ = std::min(order_, checked_order(order));
    for (int m = tables().count(r.order_); m < kSize; ++m) r.c_[m] = 0.0;
    return r;
  }

  /// Evaluate the truncated Taylor polynomial at displacement `dx`.
  double taylor_eval(const std::array<double, D>& dx) const {
    const auto& t = tables();
    double s = 0.0;
    for (int m = 0; m < t.count(order_); ++m) {
      double term = c_[m];
      for (int v = 0; v < D; ++v)
        for (int k = 0; k < t.exponents[m][v]; ++k) term *= dx[v];
      s += term;
    }
    return s;
  }

  const std::array<double, kSize>& raw() const { return c_; }
  std::array<double, kSize>& raw() { return c_; }

  Jet operator-() const {
    Jet r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  Jet& operator+=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int m = 0; m < kSize; ++m) c_[m] += o.c_[m];
    return truncate_in_place();
  }
  Jet& operator-=(const Jet& o) {
    order_ = std::min(order_, o.order_);
    for (int m = 0; m < kSize; ++m) c_[m] -= o.c_[m];
    return truncate_in_place();
  }
  Jet& operator+=(double s) {
    c_[0] += s;
    return *this;
  }
  Jet& operator-=(double s) {
    c_[0] -= s;
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  Jet& operator/=(double s) {
    for (auto& v : c_) v /= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a /= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const auto& t = tables();
    Jet r;
    r.order_ = std::min(a.order_, b.order_);
    const auto& prods = t.products;
    const int n = t.product_count[r.order_];
    for (int k = 0; k < n; ++k) {
      const auto& p = prods[k];
      r.c_[p.out] += a.c_[p.a] * b.c_[p.b];
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(double s, const Jet& b) { return reciprocal(b) * s; }

  /// f(a) given the univariate Taylor coefficients f^(k)(a0)/k!, k = 0..order.
  static Jet compose(const Jet& a, const std::array<double, kMaxOrder + 1>& taylor) {
    Jet delta = a;
    delta.c_[0] = 0.0;
    Jet r = constant(taylor[0], a.order_);
    Jet power = constant(1.0, a.order_);
    for (int k = 1; k <= a.order_; ++k) {
      power = power * delta;
      r += power * taylor[k];
    }
    return r;
  }

  friend Jet reciprocal(const Jet& a) {
    const double a0 = a.value();
    if (a0 == 0.0) throw std::domain_error("Jet: division by a jet with zero value");
    std::array<double, kMaxOrder + 1> tc{};
    double p = 1.0 / a0;
    for (int k = 0; k <= kMaxOrder; ++k) {
      tc[k] = (k % 2 == 0 ? 1.0 : -1.0) * p;
      p /= a0;
    }
    return compose(a, tc);
  }

  /// Real power a^alpha; requires a > 0 unless alpha is a non-negative integer.
  friend Jet pow(const Jet& a, double alpha) {
    const double a0 = a.value();
    if (a0 <= 0.0) throw std::domain_error("Jet::pow: base must be positive");
    std::array<double, kMaxOrder + 1> tc{};
    double binom = 1.0;
    for (int k = 0; k <= kMaxOrder; ++k) {
      tc[k] = binom * std::pow(a0, alpha - k);
      binom *= (alpha - k) / (k + 1);
    }
    return compose(a, tc);
  }

  friend Jet sqrt(const Jet& a) { return pow(a, 0.5); }

  friend Jet exp(const Jet& a) {
    std::array<double, kMaxOrder + 1> tc{};
    double e = std::exp(a.value());
    double f = 1.0;
    for (int k = 0; k <= kMaxOrder; ++k) {
      if (k > 0) f *= k;
      tc[k] = e / f;
    }
    return compose(a, tc);
  }

  friend Jet log(const Jet& a) {
    const double a0 = a.value();
    if (a0 <= 0.0) throw std::domain_error("Jet::log: argument must be positive");
    std::array<double, kMaxOrder + 1> tc{};
    tc[0] = std::log(a0);
    double p = 1.0;
    for (int k = 1; k <= kMaxOrder; ++k) {
      p /= a0;
      tc[k] = (k % 2 == 1 ? 1.0 : -1.0) * p / k;
    }
    return compose(a, tc);
  }

  friend Jet sin(const Jet& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    const std::array<double, 4> cyc{s, c, -s, -c};
    std::array<double, kMaxOrder + 1> tc{};
    double f = 1.0;
    for (int k = 0; k <= kMaxOrder; ++k) {
      if (k > 0) f *= k;
      tc[k] = cyc[k % 4] / f;
    }
    return compose(a, tc);
  }

  friend Jet cos(const Jet& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    const std::array<double, 4> cyc{c, -s, -c, s};
    std::array<double, kMaxOrder + 1> tc{};
    double f = 1.0;
    for (int k = 0; k <= kMaxOrder; ++k) {
      if (k > 0) f *= k;
      tc[k] = cyc[k % 4] / f;
    }
    return compose(a, tc);
  }

  /// Monomial bookkeeping shared by every Jet<D>.
  struct Tables {
    struct Product {
      int a, b, out;
    };
    std::vector<Exponent> exponents;  // graded order: degree 0, 1, 2, ...
    std::array<int, kMaxOrder + 2> degree_offset{};
    std::vector<Product> products;                  // sorted by output degree
    std::array<int, kMaxOrder + 1> product_count{};  // products with out degree <= n

    int count(int order) const { return degree_offset[order + 1]; }

    int index_of(const Exponent& e) const {
      for (std::size_t m = 0; m < exponents.size(); ++m)
        if (exponents[m] == e) return static_cast<int>(m);
      throw std::out_of_range("Jet: monomial outside truncation");
    }

    Tables() {
      for (int deg = 0; deg <= kMaxOrder; ++deg) {
        degree_offset[deg] = static_cast<int>(exponents.size());
        Exponent e{};
        enumerate(e, 0, deg);
      }
      degree_offset[kMaxOrder + 1] = static_cast<int>(exponents.size());
      for (int deg = 0; deg <= kMaxOrder; ++deg) {
        for (int a = 0; a < kSize; ++a) {
          for (int b = 0; b < kSize; ++b) {
            Exponent s{};
            int total = 0;
            for (int v = 0; v < D; ++v) {
              s[v] = exponents[a][v] + exponents[b][v];
              total += s[v];
            }
            if (total != deg) continue;
            products.push_back({a, b, index_of(s)});
          }
        }
        product_count[deg] = static_cast<int>(products.size());
      }
    }

   private:
    // Lexicographic enumeration (first variable highest) of exponents of degree `left`.
    void enumerate(Exponent& e, int var, int left) {
      if (var == D - 1) {
        e[var] = left;
        exponents.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[var] = k;
        enumerate(e, var + 1, left - k);
      }
    }
  };

  static const Tables& tables() {
    static const Tables t;
    return t;
  }

 private:
  static int checked_order(int order) {
    if (order < 0 || order > kMaxOrder) throw std::out_of_range("Jet: order must lie in [0, 4]");
    return order;
  }

  Jet& truncate_in_place() {
    for (int m = tables().count(order_); m < kSize; ++m) c_[m] = 0.0;
    return *this;
  }

  std::array<double, kSize> c_;
  int order_;
};

using Jet3 = Jet<3>;
using Jet4 = Jet<4>;

/// Embed a jet in (x, y, t) into the 4-variable jet (x, y, t, w) that does not depend on w.
inline Jet4 extend_to_4(const Jet3& j) {
  Jet4 r = Jet4::constant(0.0, j.order());
  const auto& t3 = Jet3::tables();
  for (int m = 0; m < t3.count(j.order()); ++m) {
    const auto& e = t3.exponents[m];
    r.raw()[Jet4::tables().index_of({e[0], e[1], e[2], 0})] = j.raw()[m];
  }
  return r;
}

/// Substitute jets for the variables of `f` (multivariate composition).
///
/// `f` is a Taylor polynomial about the values of `args`; the result is the
/// composed jet in the variables of the arguments.
template <int D, int E>
Jet<E> substitute(const Jet<D>& f, const std::array<Jet<E>, D>& args) {
  int order = f.order();
  for (const auto& a : args) order = std::min(order, a.order());
  std::array<Jet<E>, D> delta = args;
  for (auto& d : delta) d.raw()[0] = 0.0;
  // Powers delta[v]^k for k = 0..order.
  std::array<std::array<Jet<E>, Jet<D>::kMaxOrder + 1>, D> pw;
  for (int v = 0; v < D; ++v) {
    pw[v][0] = Jet<E>::constant(1.0, order);
    for (int k = 1; k <= order; ++k) pw[v][k] = pw[v][k - 1] * delta[v];
  }
  const auto& t = Jet<D>::tables();
  Jet<E> r = Jet<E>::constant(0.0, order);
  for (int m = 0; m < t.count(order); ++m) {
    const double c = f.raw()[m];
    if (c == 0.0) continue;
    Jet<E> term = Jet<E>::constant(c, order);
    for (int v = 0; v < D; ++v)
      if (t.exponents[m][v] > 0) term = term * pw[v][t.exponents[m][v]];
    r += term;
  }
  return r;
}

}  // namespace dkpew
