#pragma once

// Residual rows collected by the verification suites, written as CSV and
// summarized as JSON {check: {max, mean, points, tol, pass}}.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dkpew/solutions.hpp"

namespace dkpew {

struct ResidualRow {
  std::string suite, check;
  Point3 p{};
  double value = 0.0;
};

struct CheckSummary {
  double max = 0.0, mean = 0.0;
  int points = 0;
  double tol = 0.0;
  bool pass = true;
};

class Report {
 public:
  /// Rows for `check` pass when value < tol (or value > tol with `must_exceed`).
  void set_tolerance(const std::string& check, double tol, bool must_exceed = false);
  void add(const std::string& suite, const std::string& check, const Point3& p, double value);
  /// A check that failed to evaluate (guard, degeneracy); counts as a failure.
  void add_error(const std::string& suite, const std::string& check, const std::string& what);

  const std::vector<ResidualRow>& rows() const { return rows_; }
  std::map<std::string, CheckSummary> summary() const;
  bool pass() const;

  void write_csv(std::ostream& os) const;
  nlohmann::json summary_json() const;

 private:
  struct Tol {
    double tol;
    bool must_exceed;
  };
  std::vector<ResidualRow> rows_;
  std::map<std::string, Tol> tol_;
  std::map<std::string, std::vector<std::string>> errors_;
};

}  // namespace dkpew
