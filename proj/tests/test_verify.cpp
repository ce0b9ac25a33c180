#include <sstream>

#include "doctest.h"
#include "dkpew/errors.hpp"
#include "dkpew/sampling.hpp"
#include "dkpew/verify.hpp"

using namespace dkpew;

TEST_CASE("report summaries and pass rules") {
  Report r;
  r.set_tolerance("a", 1e-3);
  r.set_tolerance("b", 0.5, true);
  r.add("s", "a", {0, 0, 0}, -2e-4);
  r.add("s", "a", {1, 0, 0}, 4e-4);
  r.add("s", "b", {0, 0, 0}, 0.7);
  const auto sum = r.summary();
  CHECK(sum.at("a").max == 4e-4);
  CHECK(sum.at("a").mean == doctest::Approx(3e-4));
  CHECK(sum.at("a").points == 2);
  CHECK(sum.at("a").pass);
  CHECK(sum.at("b").pass);
  CHECK(r.pass());

  r.add("s", "b", {1, 1, 1}, 0.2);  // must exceed 0.5 at every row
  CHECK_FALSE(r.pass());

  Report e;
  e.add_error("s", "c", "boom");
  CHECK_FALSE(e.pass());
  CHECK(e.summary_json()["checks"]["c"]["errors"][0] == "s: boom");

  CHECK_THROWS_AS(r.set_tolerance("a", 0.0), ConfigError);
  CHECK_THROWS_AS(r.set_tolerance("a", -1.0), ConfigError);
}

TEST_CASE("report CSV") {
  Report r;
  r.add("dkp", "dkp_residual", {1, 2, 3}, 0.1);
  std::ostringstream os;
  r.write_csv(os);
  CHECK(os.str() == "suite,check,x,y,t,value\ndkp,dkp_residual,1,2,3,0.10000000000000001\n");
}

TEST_CASE("every suite passes on every exact family") {
  Rng rng(1);
  for (Family fam : {Family::ConformalEinstein, Family::HyperCR, Family::Hodograph, Family::NoKilling,
                     Family::Flat}) {
    CAPTURE(family_name(fam));
    const SolutionSpec s = make_family(fam, random_params(fam, rng));
    const Report r = verify(s, {});
    for (const auto& [check, c] : r.summary()) {
      CAPTURE(check);
      CAPTURE(c.max);
      CHECK(c.pass);
    }
    CHECK(r.summary().count("hypercr_r1") == (fam == Family::HyperCR ? 1u : 0u));
    CHECK(r.summary().at("dkp_residual").points == 125);
  }
}

TEST_CASE("off-shell input fails the Einstein-Weyl suite") {
  const SolutionSpec off = make_family(Family::Flat, {}).perturbed(
      0.1, [](const std::array<Jet3, 3>& a) { return a[0] * a[0]; });
  VerifyOptions o;
  o.suites = {"dkp", "ew"};
  const Report r = verify(off, o);
  CHECK_FALSE(r.pass());
  CHECK(r.summary().at("chi_11").max > 1e-3);
  CHECK_FALSE(r.summary().at("dkp_residual").pass);
}

TEST_CASE("options are validated") {
  const SolutionSpec s = make_family(Family::Flat, {});
  VerifyOptions o;
  o.suites = {"nope"};
  CHECK_THROWS_AS(verify(s, o), ConfigError);
  o.suites = {"dkp"};
  o.tolerances = {{"colour", 1.0}};
  CHECK_THROWS_AS(verify(s, o), ConfigError);
  o.tolerances = {{"dkp_residual", -1.0}};
  CHECK_THROWS_AS(verify(s, o), ConfigError);
  o.tolerances = {{"dkp_residual", 1e-300}};
  o.points = {{1, 1, 1}};
  CHECK_FALSE(verify(zero_solution().perturbed(1e-3, [](const auto& a) { return a[0] * a[0]; }), o).pass());
}

TEST_CASE("points outside the guard become errors, not crashes") {
  VerifyOptions o;
  o.suites = {"dkp"};
  o.points = {{1, 1, 0}};  // t = 0 is singular for the flat family
  const Report r = verify(make_family(Family::Flat, {}), o);
  CHECK_FALSE(r.pass());
  CHECK(r.summary_json()["checks"]["dkp_residual"].contains("errors"));
}

TEST_CASE("summaries are deterministic") {
  const SolutionSpec s = make_family(Family::HyperCR, {Poly1({0.5, -0.25})});
  VerifyOptions o;
  o.suites = {"ew", "lax", "hypercr"};
  CHECK(verify(s, o).summary_json().dump() == verify(s, o).summary_json().dump());
}
