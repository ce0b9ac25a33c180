#pragma once

// Polynomials in one variable. Every "arbitrary function of one variable"
// in the solution families is one of these, so derivatives stay exact.

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dkpew/jet.hpp"

namespace dkpew {

class Poly1 {
 public:
  static constexpr int kDefaultMaxDegree = 8;

  Poly1() = default;
  /// Coefficients in ascending degree. Trailing zeros are trimmed.
  explicit Poly1(std::vector<double> coeffs, std::string var = "t",
                 int max_degree = kDefaultMaxDegree);

  static Poly1 constant(double c, std::string var = "t") { return Poly1({c}, std::move(var)); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<double>& coeffs() const { return c_; }
  const std::string& var() const { return var_; }

  double operator()(double s) const;
  Poly1 derivative(int k = 1) const;

  template <int D>
  Jet<D> operator()(const Jet<D>& s) const {
    Jet<D> r = Jet<D>::constant(0.0, s.order());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * s + *it;
    return r;
  }

  friend Poly1 operator+(const Poly1& a, const Poly1& b);
  friend Poly1 operator-(const Poly1& a, const Poly1& b);
  friend Poly1 operator*(const Poly1& a, const Poly1& b);
  friend Poly1 operator*(double s, const Poly1& a);

 private:
  std::vector<double> c_;
  std::string var_ = "t";
};

void to_json(nlohmann::json& j, const Poly1& p);
void from_json(const nlohmann::json& j, Poly1& p);

}  // namespace dkpew
