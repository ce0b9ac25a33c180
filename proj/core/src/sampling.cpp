#include "dkpew/sampling.hpp"

#include "dkpew/errors.hpp"

namespace dkpew {

Box3 default_box(Family f) {
  Box3 b;
  if (f == Family::HyperCR) {
    b.lo[1] = 2.0;
    b.hi[1] = 3.0;
  }
  return b;
}

std::vector<Point3> lattice(int n, const Box3& box) {
  if (n < 1) throw ConfigError("lattice: need at least one point per side");
  std::vector<Point3> pts;
  pts.reserve(static_cast<std::size_t>(n) * n * n);
  auto at = [&](int axis, int k) {
    return n == 1 ? 0.5 * (box.lo[axis] + box.hi[axis])
                  : box.lo[axis] + (box.hi[axis] - box.lo[axis]) * k / (n - 1);
  };
  for (int c = 0; c < n; ++c)
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) pts.push_back({at(0, a), at(1, b), at(2, c)});
  return pts;
}

std::vector<Point3> random_points(Rng& rng, int count, const Box3& box) {
  std::vector<Point3> pts;
  for (int k = 0; k < count; ++k) {
    Point3 p;
    for (int a = 0; a < 3; ++a)
      p[a] = std::uniform_real_distribution<double>(box.lo[a], box.hi[a])(rng);
    pts.push_back(p);
  }
  return pts;
}

std::vector<Point4> random_points4(Rng& rng, int count, const Box3& box, double z_lo,
                                   double z_hi) {
  std::vector<Point4> pts;
  for (const Point3& p : random_points(rng, count, box))
    pts.push_back({p[0], p[1], p[2], std::uniform_real_distribution<double>(z_lo, z_hi)(rng)});
  return pts;
}

Poly1 random_poly(Rng& rng, int degree, double scale, const std::string& var) {
  std::uniform_real_distribution<double> d(-scale, scale);
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (double& v : c) v = d(rng);
  return Poly1(c, var);
}

std::vector<Poly1> random_params(Family f, Rng& rng) {
  switch (f) {
    case Family::ConformalEinstein:
      return {random_poly(rng, 2, 0.5), random_poly(rng, 2, 0.5), random_poly(rng, 2, 0.5)};
    case Family::HyperCR: return {random_poly(rng, 3, 1.0)};
    case Family::Hodograph: return {random_poly(rng, 2, 0.05, "s")};
    case Family::NoKilling: return {random_poly(rng, 2, 0.05)};
    case Family::Flat: return {};
    case Family::Custom: break;
  }
  throw ConfigError("random_params: no parameters for custom specs");
}

}  // namespace dkpew
