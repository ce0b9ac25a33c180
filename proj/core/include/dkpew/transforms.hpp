#pragma once

// Solution-generating freedoms of dKP and the bridge to the second heavenly
// equation.

#include <nlohmann/json_fwd.hpp>

#include "dkpew/hyperkahler.hpp"
#include "dkpew/poly1.hpp"
#include "dkpew/solutions.hpp"

namespace dkpew {

struct CoordFreedom {
  enum class Kind { Galilean, Conformal };
  Kind kind = Kind::Galilean;
  Poly1 f, g;  // Galilean
  Poly1 c;     // Conformal
};

/// u~(x, y, t) = u(x - f' y - g, y - 2f, t) - y f'' - f'^2 - g'.
SolutionSpec apply_coordtrans(const SolutionSpec& spec, const Poly1& f, const Poly1& g);

/// u~(x, y, t) = c'^(2/3) u(c'^(1/3) x + c'' y^2 / (6 c'^(2/3)), c'^(2/3) y, c)
///               + c'' x / (3c') + (y^2/18)(3c'''/c' - 4(c''/c')^2).
/// Evaluation throws DomainError where c' <= 0.
SolutionSpec apply_conftrans(const SolutionSpec& spec, const Poly1& c);

SolutionSpec apply(const SolutionSpec& spec, const CoordFreedom& t);

struct HeavenlyJet {
  double theta_yy = 0, theta_yq = 0, theta_qq = 0;
};

/// theta_yy = u_y^2/u_x + u u_x - u_t, theta_yq = u_y/u_x + z, theta_qq = 1/u_x.
HeavenlyJet heavenly_jet(const SolutionSpec& spec, const Point4& p);

/// Pulls back 2(dz dy + dq dt - theta_qq dz^2 - theta_yy dt^2 + 2 theta_yq dz dt)
/// along q = -u - z^2 and returns the max component gap to metric_from_dkp.
double heavenly_metric_check(const SolutionSpec& spec, const Point4& p);

void to_json(nlohmann::json& j, const CoordFreedom& t);
void from_json(const nlohmann::json& j, CoordFreedom& t);

}  // namespace dkpew
