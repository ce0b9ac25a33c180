#include "dkpew/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dkpew/errors.hpp"
#include "dkpew/hyperkahler.hpp"
#include "dkpew/lax.hpp"
#include "dkpew/minitwistor.hpp"
#include "dkpew/sampling.hpp"
#include "dkpew/transforms.hpp"
#include "dkpew/weyl.hpp"

namespace dkpew {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"dkp",      "ew",        "weyl-scalar", "lax",
                                              "hk",       "monopole",  "jones-tod",   "heavenly",
                                              "simplicity", "hypercr"};
  return names;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tol{
      {"dkp_residual", 1e-9},     {"chi_max", 1e-6},         {"chi_11", 1e-6},
      {"weyl_scalar_gap", 1e-6},  {"lax_identity", 1e-9},    {"hk_bracket", 1e-9},
      {"hk_divergence", 1e-9},    {"wedge_identity", 1e-12}, {"tetrad_gap", 1e-12},
      {"closure_s00", 1e-6},      {"closure_s01", 1e-6},     {"closure_s11", 1e-6},
      {"monopole", 1e-6},         {"linearized_dkp", 1e-8},  {"jones_tod_factor", 1e-6},
      {"jones_tod_gauge", 1e-6},  {"heavenly_gap", 1e-10},   {"simplicity_x", 1e-9},
      {"simplicity_t", 1e-9},     {"hypercr_r1", 1e-8},      {"hypercr_r2", 1e-8},
      {"hypercr_r3", 1e-8},       {"hypercr_r4", 1e-8}};
  return tol;
}

namespace {

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

Report verify(const SolutionSpec& spec, const VerifyOptions& opt) {
  const std::vector<Point3> pts = opt.points.empty() ? lattice(5, default_box(spec.family())) : opt.points;
  std::vector<std::string> suites;
  for (const auto& s : opt.suites) {
    if (s == "all") {
      for (const auto& n : suite_names())
        if (n != "hypercr" || spec.family() == Family::HyperCR) suites.push_back(n);
    } else if (std::find(suite_names().begin(), suite_names().end(), s) != suite_names().end()) {
      suites.push_back(s);
    } else {
      throw ConfigError("unknown suite '" + s + "'");
    }
  }

  Report rep;
  for (const auto& [k, v] : default_tolerances()) rep.set_tolerance(k, v);
  for (const auto& [k, v] : opt.tolerances) {
    if (!default_tolerances().count(k)) throw ConfigError("unknown tolerance key '" + k + "'");
    rep.set_tolerance(k, v);
  }

  const WeylStructure ws = ew_from_dkp(spec);
  const double h = opt.fd_step;

  // Runs one point of a suite; evaluation failures become report errors.
  auto guarded = [&](const std::string& suite, const std::string& check, const Point3& p,
                     const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      rep.add_error(suite, check,
                    "(" + std::to_string(p[0]) + ", " + std::to_string(p[1]) + ", " +
                        std::to_string(p[2]) + "): " + e.what());
    }
  };

  for (const auto& suite : suites) {
    for (const Point3& p : pts) {
      const Point4 p4{p[0], p[1], p[2], opt.z};
      if (suite == "dkp") {
        guarded(suite, "dkp_residual", p, [&] { rep.add(suite, "dkp_residual", p, dkp_residual(spec, p)); });
      } else if (suite == "ew") {
        guarded(suite, "chi_max", p, [&] {
          const Mat3 chi = ew_residual(ws, to_chart(p), h);
          rep.add(suite, "chi_max", p, max_abs(chi));
          rep.add(suite, "chi_11", p, chi(0, 0));
        });
      } else if (suite == "weyl-scalar") {
        guarded(suite, "weyl_scalar_gap", p, [&] {
          // measured relation W = 3 u_xx
          const double W = weyl_scalar(ws, to_chart(p), h);
          const double ref = 3.0 * spec.jet(p, 2).partial({2, 0, 0});
          rep.add(suite, "weyl_scalar_gap", p, std::abs(W - ref) / std::max(1.0, std::abs(ref)));
        });
      } else if (suite == "lax") {
        guarded(suite, "lax_identity", p, [&] {
          rep.add(suite, "lax_identity", p, lax_identity_residual(spec, p));
          rep.add(suite, "hk_bracket", p, hk_lax_bracket(spec, p4).max_abs());
          double d = 0.0;
          for (double v : frame_divergences(spec, p4)) d = std::max(d, std::abs(v));
          rep.add(suite, "hk_divergence", p, d);
        });
      } else if (suite == "hk") {
        guarded(suite, "wedge_identity", p, [&] {
          rep.add(suite, "wedge_identity", p, wedge_identity_residual(sd_forms(spec, p4)));
          rep.add(suite, "tetrad_gap", p,
                  (metric_from_tetrad(tetrad(spec, p4)) - metric_from_dkp(spec, p4))
                      .cwiseAbs()
                      .maxCoeff());
          rep.add(suite, "closure_s00", p, closure_residual(spec, SdForm::S00, p4, h));
          rep.add(suite, "closure_s01", p, closure_residual(spec, SdForm::S01, p4, h));
          rep.add(suite, "closure_s11", p, closure_residual(spec, SdForm::S11, p4, h));
        });
      } else if (suite == "monopole") {
        guarded(suite, "monopole", p, [&] {
          const Monopole m = canonical_monopole(spec);
          const auto r = monopole_residual(spec, m, p);
          rep.add(suite, "monopole", p,
                  std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])}));
          auto V = [&spec](const Point3& q) { return 0.5 * spec.jet(q, 3).diff(kX); };
          rep.add(suite, "linearized_dkp", p, linearized_dkp_apply(spec, V, p));
        });
      } else if (suite == "jones-tod") {
        guarded(suite, "jones_tod_factor", p, [&] {
          const JonesTodResult jt = jones_tod_reduce(spec, p);
          const double ux = spec.jet(p, 1).d(kX);
          rep.add(suite, "jones_tod_factor", p,
                  std::max(std::abs(jt.factor - jones_tod_expected_factor(ux)),
                           jt.proportionality_gap));
          rep.add(suite, "jones_tod_gauge", p, jt.nu_gauge_gap);
        });
      } else if (suite == "heavenly") {
        guarded(suite, "heavenly_gap", p,
                [&] { rep.add(suite, "heavenly_gap", p, heavenly_metric_check(spec, p4)); });
      } else if (suite == "simplicity") {
        guarded(suite, "simplicity_x", p, [&] {
          const Jet3 u = spec.jet(p, 1);
          const Jet3 w = potential_w(spec, p, 1);
          const auto s = simplicity_residual(u, w);
          rep.add(suite, "simplicity_x", p, s[0]);
          rep.add(suite, "simplicity_t", p, s[1]);
        });
      } else if (suite == "hypercr") {
        guarded(suite, "hypercr_r1", p, [&] {
          const auto r = hyper_cr_residuals(spec, p);
          rep.add(suite, "hypercr_r1", p, r[0]);
          rep.add(suite, "hypercr_r2", p, r[1]);
          rep.add(suite, "hypercr_r3", p, r[2]);
          rep.add(suite, "hypercr_r4", p, r[3]);
        });
      }
    }
  }
  return rep;
}

}  // namespace dkpew
