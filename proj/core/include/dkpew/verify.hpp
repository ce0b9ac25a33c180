#pragma once

// Residual suites run over a set of sample points, collected into a Report.

#include <map>
#include <string>
#include <vector>

#include "dkpew/report.hpp"
#include "dkpew/solutions.hpp"

namespace dkpew {

/// dkp, ew, weyl-scalar, lax, hk, monopole, jones-tod, heavenly, simplicity, hypercr.
const std::vector<std::string>& suite_names();

/// Default pass thresholds keyed by check name.
const std::map<std::string, double>& default_tolerances();

struct VerifyOptions {
  std::vector<std::string> suites{"all"};
  std::vector<Point3> points;  // empty: 5 x 5 x 5 lattice on default_box(family)
  double z = 0.25;             // fibre coordinate for the 4D suites
  double fd_step = 1e-2;
  std::map<std::string, double> tolerances;  // overrides
};

/// "all" expands to every suite; hypercr only for the hyper-cr family.
Report verify(const SolutionSpec& spec, const VerifyOptions& opt);

}  // namespace dkpew
