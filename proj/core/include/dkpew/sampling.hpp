#pragma once

// Sample lattices and seeded random parameters for the residual suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dkpew/hyperkahler.hpp"
#include "dkpew/solutions.hpp"

namespace dkpew {

using Rng = std::mt19937_64;

struct Box3 {
  Point3 lo{1.0, 1.0, 1.0};
  Point3 hi{2.0, 2.0, 2.0};
};

/// [1, 2]^3, except y in [2, 3] for hyper-cr: the 1/y^2 terms make the
/// 4th-order FD curvature error about 3e-5 at y = 1 and 2e-7 at y = 2.
Box3 default_box(Family f);

/// n x n x n points spanning the box, x fastest.
std::vector<Point3> lattice(int n = 5, const Box3& box = {});

/// Uniform points in the box.
std::vector<Point3> random_points(Rng& rng, int count, const Box3& box = {});

/// Uniform points in box x [z_lo, z_hi].
std::vector<Point4> random_points4(Rng& rng, int count, const Box3& box = {}, double z_lo = -1.0,
                                   double z_hi = 1.0);

/// Coefficients uniform in [-scale, scale].
Poly1 random_poly(Rng& rng, int degree, double scale, const std::string& var = "t");

/// Parameters sized so the default box stays inside the family's guard:
/// hodograph data small enough to keep clear of the caustic, A(t) small
/// against x / t for no-killing.
std::vector<Poly1> random_params(Family f, Rng& rng);

/// The four exact families with closed-form parameters.
inline constexpr Family kExactFamilies[] = {Family::ConformalEinstein, Family::HyperCR,
                                            Family::Hodograph, Family::NoKilling};

}  // namespace dkpew
