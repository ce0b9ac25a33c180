#pragma once

// Differential forms on a 4-dimensional chart. Components are stored for
// strictly increasing index tuples only, so antisymmetry holds by construction.

#include <array>
#include <functional>
#include <initializer_list>
#include <vector>

#include "dkpew/curvature.hpp"

namespace dkpew {

using Vec4 = VecN<4>;
using Mat4 = MatN<4>;

class Form4 {
 public:
  explicit Form4(int degree = 0);

  static Form4 one_form(const Vec4& c);

  int degree() const { return p_; }
  std::size_t size() const { return c_.size(); }

  /// Increasing index tuples of length p, in storage order.
  static const std::vector<std::vector<int>>& tuples(int p);

  /// Component for an arbitrary index tuple (sign from sorting; 0 on repeats).
  double get(std::initializer_list<int> idx) const;
  double get(const std::vector<int>& idx) const;
  /// Sets the component so that get(idx) returns v.
  void set(std::initializer_list<int> idx, double v);
  void add(std::initializer_list<int> idx, double v);

  double& at(std::size_t slot) { return c_[slot]; }
  double at(std::size_t slot) const { return c_[slot]; }

  double max_abs() const;

  Form4& operator+=(const Form4& o);
  Form4& operator-=(const Form4& o);
  Form4& operator*=(double s);
  friend Form4 operator+(Form4 a, const Form4& b) { return a += b; }
  friend Form4 operator-(Form4 a, const Form4& b) { return a -= b; }
  friend Form4 operator*(double s, Form4 a) { return a *= s; }

 private:
  int p_;
  std::vector<double> c_;
};

Form4 wedge(const Form4& a, const Form4& b);

/// Hodge star with respect to g; `orientation` is the sign of eps_0123 / sqrt|det g|.
Form4 hodge_star(const Form4& w, const Mat4& g, int orientation = +1);

struct FormField4 {
  int degree = 0;
  std::function<Form4(const Vec4&)> at;
};

/// Exterior derivative by 4th-order central differences of the component functions.
Form4 exterior_derivative_fd(const FormField4& f, const Vec4& p, double h = kDefaultFdStep);

}  // namespace dkpew
