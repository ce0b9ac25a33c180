#pragma once

// Truncated Laurent series sum_k c_k lambda^k for floor <= k <= top.
// Terms below `floor` are discarded by every operation. The coefficient type
// only needs ring operations and division by a leading coefficient.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace dkpew {

template <class T>
class Laurent {
 public:
  /// Zero series with room for powers floor..top; `zero` fixes the coefficient shape.
  Laurent(int floor, int top, T zero)
      : floor_(floor), zero_(zero), c_(std::max(0, top - floor + 1), zero) {}

  static Laurent monomial(int power, T coeff, int floor, T zero) {
    Laurent r(floor, std::max(power, floor), zero);
    if (power >= floor) r.c_[power - floor] = coeff;
    return r;
  }

  int floor() const { return floor_; }
  int top() const { return floor_ + static_cast<int>(c_.size()) - 1; }
  const T& zero() const { return zero_; }

  T coeff(int k) const { return (k < floor_ || k > top()) ? zero_ : c_[k - floor_]; }
  void set(int k, const T& v) {
    if (k < floor_) return;
    grow(k);
    c_[k - floor_] = v;
  }

  template <class U>
  Laurent<U> map(const std::function<U(const T&)>& f, U zero) const {
    Laurent<U> r(floor_, top(), zero);
    for (int k = floor_; k <= top(); ++k) r.set(k, f(coeff(k)));
    return r;
  }

  /// d/dlambda; the derivative of the floor term falls below the floor and is dropped.
  Laurent derivative() const {
    Laurent r(floor_, top(), zero_);
    for (int k = floor_ + 1; k <= top(); ++k)
      if (k != 0) r.set(k - 1, coeff(k) * static_cast<double>(k));
    return r;
  }

  Laurent& operator+=(const Laurent& o) {
    raise_floor(o.floor_);
    for (int k = floor_; k <= o.top(); ++k) set(k, coeff(k) + o.coeff(k));
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    raise_floor(o.floor_);
    for (int k = floor_; k <= o.top(); ++k) set(k, coeff(k) - o.coeff(k));
    return *this;
  }
  Laurent& operator*=(double s) {
    for (auto& v : c_) v = v * s;
    return *this;
  }
  Laurent scaled(const T& s) const {
    Laurent r = *this;
    for (auto& v : r.c_) v = v * s;
    return r;
  }

  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(double s, Laurent a) { return a *= s; }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    const int floor = std::max(a.floor_, b.floor_);
    Laurent r(floor, std::max(floor, a.top() + b.top()), a.zero_);
    for (int i = a.floor_; i <= a.top(); ++i)
      for (int j = b.floor_; j <= b.top(); ++j) {
        const int k = i + j;
        if (k < floor) continue;
        r.c_[k - floor] = r.c_[k - floor] + a.coeff(i) * b.coeff(j);
      }
    return r;
  }

  /// Multiplicative inverse. The highest stored power must carry an invertible coefficient.
  /// The result keeps the relative depth top - floor, so its floor is floor - 2 top.
  Laurent inverse() const {
    const int m = top();
    const T a = coeff(m);
    const T ia = 1.0 / a;
    // S = a lambda^m (1 + delta), delta = sum_{k<m} (c_k / a) lambda^(k - m).
    // 1/S = (1/a) lambda^-m sum_n (-delta)^n with delta known down to floor - m.
    const int rel_floor = floor_ - m;
    Laurent delta(std::min(rel_floor, 0), -1, zero_);
    for (int k = floor_; k < m; ++k) delta.set(k - m, coeff(k) * ia);
    Laurent sum = monomial(0, zero_ + 1.0, std::min(rel_floor, 0), zero_);
    Laurent term = sum;
    for (int n = 1; n <= std::max(0, -rel_floor); ++n) {
      term = term * delta;
      term *= -1.0;
      sum += term;
    }
    Laurent r(rel_floor - m, -m, zero_);
    for (int k = sum.floor(); k <= sum.top(); ++k) r.set(k - m, sum.coeff(k) * ia);
    return r;
  }

 private:
  void grow(int k) {
    if (k > top()) c_.resize(k - floor_ + 1, zero_);
  }
  void raise_floor(int f) {
    if (f <= floor_) return;
    const auto drop = std::min<std::size_t>(c_.size(), static_cast<std::size_t>(f - floor_));
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(drop));
    floor_ = f;
  }

  int floor_;
  T zero_;
  std::vector<T> c_;
};

}  // namespace dkpew
