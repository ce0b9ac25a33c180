#include "dkpew/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "dkpew/errors.hpp"

namespace dkpew {

void Report::set_tolerance(const std::string& check, double tol, bool must_exceed) {
  if (!(tol > 0.0)) throw ConfigError("tolerance for '" + check + "' must be positive");
  tol_[check] = {tol, must_exceed};
}

void Report::add(const std::string& suite, const std::string& check, const Point3& p,
                 double value) {
  rows_.push_back({suite, check, p, value});
}

void Report::add_error(const std::string& suite, const std::string& check,
                       const std::string& what) {
  errors_[check].push_back(suite + ": " + what);
}

std::map<std::string, CheckSummary> Report::summary() const {
  std::map<std::string, CheckSummary> out;
  for (const auto& r : rows_) {
    CheckSummary& s = out[r.check];
    const double v = std::abs(r.value);
    s.max = s.points == 0 ? v : std::max(s.max, v);
    s.mean += v;
    ++s.points;
  }
  for (auto& [check, s] : out) {
    s.mean /= s.points;
    const auto it = tol_.find(check);
    if (it != tol_.end()) {
      s.tol = it->second.tol;
      if (it->second.must_exceed) {
        // every row has to clear the threshold
        double mn = INFINITY;
        for (const auto& r : rows_)
          if (r.check == check) mn = std::min(mn, std::abs(r.value));
        s.pass = mn > s.tol;
      } else {
        s.pass = s.max < s.tol;
      }
    }
    if (errors_.count(check)) s.pass = false;
  }
  for (const auto& [check, _] : errors_)
    if (!out.count(check)) out[check].pass = false;
  return out;
}

bool Report::pass() const {
  for (const auto& [_, s] : summary())
    if (!s.pass) return false;
  return true;
}

void Report::write_csv(std::ostream& os) const {
  os << "suite,check,x,y,t,value\n";
  os << std::setprecision(17);
  for (const auto& r : rows_)
    os << r.suite << ',' << r.check << ',' << r.p[0] << ',' << r.p[1] << ',' << r.p[2] << ','
       << r.value << '\n';
}

nlohmann::json Report::summary_json() const {
  nlohmann::json j = nlohmann::json::object();
  nlohmann::json checks = nlohmann::json::object();
  for (const auto& [check, s] : summary()) {
    nlohmann::json c{{"max", s.max}, {"mean", s.mean}, {"points", s.points}, {"pass", s.pass}};
    if (s.tol > 0.0) c["tol"] = s.tol;
    const auto e = errors_.find(check);
    if (e != errors_.end()) c["errors"] = e->second;
    checks[check] = c;
  }
  j["checks"] = checks;
  j["pass"] = pass();
  return j;
}

}  // namespace dkpew
