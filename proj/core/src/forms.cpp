#include "dkpew/forms.hpp"

#include <algorithm>
#include <stdexcept>

namespace dkpew {

namespace {

std::vector<std::vector<std::vector<int>>> build_tuples() {
  std::vector<std::vector<std::vector<int>>> all(5);
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> t;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) t.push_back(i);
    all[t.size()].push_back(t);
  }
  for (auto& v : all) std::sort(v.begin(), v.end());
  return all;
}

const std::vector<std::vector<std::vector<int>>>& all_tuples() {
  static const auto t = build_tuples();
  return t;
}

// Sorts idx in place; returns the permutation sign, 0 on a repeated index.
int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      } else if (idx[j] == idx[j + 1]) {
        return 0;
      }
  for (std::size_t j = 0; j + 1 < idx.size(); ++j)
    if (idx[j] == idx[j + 1]) return 0;
  return sign;
}

std::size_t slot_of(int p, const std::vector<int>& sorted) {
  const auto& t = all_tuples()[p];
  return static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), sorted) - t.begin());
}

}  // namespace

Form4::Form4(int degree) : p_(degree) {
  if (degree < 0 || degree > 4) throw std::out_of_range("Form4: degree must lie in [0, 4]");
  c_.assign(all_tuples()[degree].size(), 0.0);
}

Form4 Form4::one_form(const Vec4& c) {
  Form4 f(1);
  for (int i = 0; i < 4; ++i) f.c_[i] = c[i];
  return f;
}

const std::vector<std::vector<int>>& Form4::tuples(int p) { return all_tuples().at(p); }

double Form4::get(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != p_) throw std::invalid_argument("Form4::get: wrong arity");
  std::vector<int> s = idx;
  const int sign = sort_sign(s);
  return sign == 0 ? 0.0 : sign * c_[slot_of(p_, s)];
}

double Form4::get(std::initializer_list<int> idx) const { return get(std::vector<int>(idx)); }

void Form4::set(std::initializer_list<int> idx, double v) {
  std::vector<int> s(idx);
  if (static_cast<int>(s.size()) != p_) throw std::invalid_argument("Form4::set: wrong arity");
  const int sign = sort_sign(s);
  if (sign == 0) throw std::invalid_argument("Form4::set: repeated index");
  c_[slot_of(p_, s)] = sign * v;
}

void Form4::add(std::initializer_list<int> idx, double v) {
  std::vector<int> s(idx);
  const int sign = sort_sign(s);
  if (sign == 0) throw std::invalid_argument("Form4::add: repeated index");
  c_[slot_of(p_, s)] += sign * v;
}

double Form4::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Form4& Form4::operator+=(const Form4& o) {
  if (o.p_ != p_) throw std::invalid_argument("Form4: degree mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Form4& Form4::operator-=(const Form4& o) {
  if (o.p_ != p_) throw std::invalid_argument("Form4: degree mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Form4& Form4::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Form4 wedge(const Form4& a, const Form4& b) {
  const int p = a.degree(), q = b.degree();
  if (p + q > 4) throw std::invalid_argument("wedge: degree exceeds 4");
  Form4 r(p + q);
  const auto& ta = Form4::tuples(p);
  const auto& tb = Form4::tuples(q);
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (a.at(i) == 0.0) continue;
    for (std::size_t j = 0; j < tb.size(); ++j) {
      std::vector<int> idx = ta[i];
      idx.insert(idx.end(), tb[j].begin(), tb[j].end());
      const int sign = sort_sign(idx);
      if (sign == 0) continue;
      r.at(slot_of(p + q, idx)) += sign * a.at(i) * b.at(j);
    }
  }
  return r;
}

Form4 hodge_star(const Form4& w, const Mat4& g, int orientation) {
  const int p = w.degree();
  const Mat4 gi = checked_inverse<4>(g);
  const double vol = orientation * std::sqrt(std::abs(g.determinant()));
  const auto& tp = Form4::tuples(p);
  // Raise all indices: w^I = sum_K det(gi[I, K]) w_K over increasing tuples.
  std::vector<double> up(tp.size(), 0.0);
  for (std::size_t I = 0; I < tp.size(); ++I)
    for (std::size_t K = 0; K < tp.size(); ++K) {
      Eigen::MatrixXd m(p, p);
      for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) m(a, b) = gi(tp[I][a], tp[K][b]);
      up[I] += (p == 0 ? 1.0 : m.determinant()) * w.at(K);
    }
  Form4 r(4 - p);
  const auto& tq = Form4::tuples(4 - p);
  for (std::size_t J = 0; J < tq.size(); ++J)
    for (std::size_t I = 0; I < tp.size(); ++I) {
      std::vector<int> idx = tp[I];
      idx.insert(idx.end(), tq[J].begin(), tq[J].end());
      const int sign = sort_sign(idx);
      if (sign != 0) r.at(J) += sign * vol * up[I];
    }
  return r;
}

Form4 exterior_derivative_fd(const FormField4& f, const Vec4& p, double h) {
  const int deg = f.degree;
  if (deg >= 4) return Form4(4);
  std::array<Form4, 4> df;
  for (int k = 0; k < 4; ++k) {
    auto comp = [&](const Vec4& q) {
      const Form4 w = f.at(q);
      Eigen::VectorXd v(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) v[i] = w.at(i);
      return v;
    };
    const Eigen::VectorXd d = central_diff<4>(comp, p, k, h);
    Form4 w(deg);
    for (std::size_t i = 0; i < w.size(); ++i) w.at(i) = d[i];
    df[k] = w;
  }
  Form4 r(deg + 1);
  const auto& t = Form4::tuples(deg + 1);
  for (std::size_t J = 0; J < t.size(); ++J) {
    double s = 0.0;
    for (int k = 0; k <= deg; ++k) {
      std::vector<int> rest;
      for (int m = 0; m <= deg; ++m)
        if (m != k) rest.push_back(t[J][m]);
      s += ((k % 2) ? -1.0 : 1.0) * df[t[J][k]].get(rest);
    }
    r.at(J) = s;
  }
  return r;
}

}  // namespace dkpew
