#include "dkpew/poly1.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "dkpew/errors.hpp"

namespace dkpew {

namespace {
void trim(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}
}  // namespace

Poly1::Poly1(std::vector<double> coeffs, std::string var, int max_degree)
    : c_(std::move(coeffs)), var_(std::move(var)) {
  trim(c_);
  for (double v : c_)
    if (!std::isfinite(v)) throw ConfigError("Poly1: non-finite coefficient");
  if (degree() > max_degree)
    throw ConfigError("Poly1: degree " + std::to_string(degree()) + " exceeds maximum " +
                      std::to_string(max_degree));
}

double Poly1::operator()(double s) const {
  double r = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * s + *it;
  return r;
}

Poly1 Poly1::derivative(int k) const {
  std::vector<double> c = c_;
  for (int n = 0; n < k && !c.empty(); ++n) {
    for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * static_cast<double>(i);
    c.pop_back();
  }
  Poly1 r;
  r.c_ = std::move(c);
  trim(r.c_);
  r.var_ = var_;
  return r;
}

Poly1 operator+(const Poly1& a, const Poly1& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly1(std::move(c), a.var_);
}

Poly1 operator-(const Poly1& a, const Poly1& b) { return a + (-1.0) * b; }

Poly1 operator*(double s, const Poly1& a) {
  Poly1 r = a;
  for (auto& v : r.c_) v *= s;
  trim(r.c_);
  return r;
}

Poly1 operator*(const Poly1& a, const Poly1& b) {
  if (a.is_zero() || b.is_zero()) return Poly1({}, a.var_);
  std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly1(std::move(c), a.var_, 2 * Poly1::kDefaultMaxDegree);
}

void to_json(nlohmann::json& j, const Poly1& p) { j = p.coeffs(); }

void from_json(const nlohmann::json& j, Poly1& p) {
  if (j.is_number()) {
    p = Poly1({j.get<double>()});
  } else if (j.is_array()) {
    p = Poly1(j.get<std::vector<double>>());
  } else {
    throw ConfigError("Poly1: expected a number or an array of coefficients");
  }
}

}  // namespace dkpew
