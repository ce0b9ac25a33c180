// dkpew: batch verification, evolution runs and report generation.
// Exit codes: 0 ok, 1 a tolerance or solver failure, 2 bad configuration.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dkpew/errors.hpp"
#include "dkpew/evolve.hpp"
#include "dkpew/minitwistor.hpp"
#include "dkpew/sampling.hpp"
#include "dkpew/transforms.hpp"
#include "dkpew/verify.hpp"
#include "dkpew/weyl.hpp"
#include "json_config.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dkpew;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

enum class Format { Csv, Json };

// Options shared by the commands that act on one solution.
struct SpecArgs {
  std::string family;
  std::string params;  // inline JSON array of polynomials, or a file holding one
  std::string spec;    // inline JSON {family, params}, or a file holding one
  std::vector<double> p;
  double perturb = 0.0;

  void add_to(CLI::App* sub) {
    sub->add_option("--family", family, "conformal-einstein, hyper-cr, hodograph, no-killing, flat");
    sub->add_option("--params", params, "JSON array of coefficient lists (inline or file)");
    sub->add_option("--spec", spec, "JSON {family, params} (inline or file)");
    sub->add_option("--p", p, "coefficients of the first parameter, ascending")->delimiter(',');
    sub->add_option("--perturb", perturb, "add eps x^2 to push u off-shell");
  }

  SolutionSpec build() const {
    SolutionSpec s = [&] {
      if (!spec.empty()) {
        if (!family.empty() || !params.empty()) throw ConfigError("--spec excludes --family/--params");
        return spec_from_json(load_json(spec));
      }
      if (family.empty()) throw ConfigError("no solution given: use --family or --spec");
      std::vector<Poly1> ps;
      if (!params.empty()) ps = load_json(params).get<std::vector<Poly1>>();
      if (!p.empty()) {
        if (ps.empty()) ps.emplace_back();
        ps[0] = Poly1(p);
      }
      return make_family(family, ps);
    }();
    if (perturb != 0.0)
      s = s.perturbed(perturb, [](const std::array<Jet3, 3>& a) { return a[0] * a[0]; });
    return s;
  }

  static json load_json(const std::string& text_or_path) {
    std::string text = text_or_path;
    if (fs::is_regular_file(text_or_path)) {
      std::ifstream in(text_or_path);
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError("bad JSON in '" + text_or_path + "': " + e.what());
    }
  }
};

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const std::string& s : items) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("tolerance '" + s + "' is not name=value");
    const std::string name = s.substr(0, eq), val = s.substr(eq + 1);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size())
      throw ConfigError("tolerance '" + s + "': bad number");
    if (!(v > 0)) throw ConfigError("tolerance '" + name + "' must be positive");
    out[name] = v;
  }
  return out;
}

double tolerance(const std::map<std::string, double>& tols, const std::string& name, double dflt) {
  for (const auto& [k, _] : tols)
    if (k != name) throw ConfigError("unknown tolerance '" + k + "' (expected " + name + ")");
  const auto it = tols.find(name);
  return it == tols.end() ? dflt : it->second;
}

Point3 point3(const std::vector<double>& v, const char* flag) {
  if (v.size() != 3) throw ConfigError(std::string(flag) + " needs three comma-separated numbers");
  return {v[0], v[1], v[2]};
}

std::pair<int, int> parse_grid(const std::string& g) {
  int nx = 0, ny = 0;
  const auto x = g.find('x');
  const std::string a = g.substr(0, x), b = x == std::string::npos ? a : g.substr(x + 1);
  const auto r1 = std::from_chars(a.data(), a.data() + a.size(), nx);
  const auto r2 = std::from_chars(b.data(), b.data() + b.size(), ny);
  if (r1.ec != std::errc() || r2.ec != std::errc() || r1.ptr != a.data() + a.size() ||
      r2.ptr != b.data() + b.size() || nx <= 0 || ny <= 0)
    throw ConfigError("grid '" + g + "' is not N or NXxNY");
  return {nx, ny};
}

void prepare_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

std::string out_path(const std::string& dir, const std::string& name) {
  return dir.empty() ? name : (fs::path(dir) / name).string();
}

// Rows of numbers printed as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<double>> rows;

  void write(std::ostream& os, Format f) const {
    if (f == Format::Json) {
      json a = json::array();
      for (const auto& r : rows) {
        json o = json::object();
        for (std::size_t k = 0; k < cols.size(); ++k) o[cols[k]] = r[k];
        a.push_back(o);
      }
      os << a.dump(2) << "\n";
      return;
    }
    os.precision(17);
    for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
    os << "\n";
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.size(); ++k) os << (k ? "," : "") << r[k];
      os << "\n";
    }
  }

  void save(const std::string& dir, const std::string& stem, Format f) const {
    if (dir.empty()) return;
    std::ofstream os(out_path(dir, stem + (f == Format::Json ? ".json" : ".csv")));
    write(os, f);
  }
};

std::vector<Point3> sample_points(const SolutionSpec& s, int n) {
  if (n < 1) throw ConfigError("--grid must be at least 1");
  const Box3 box = default_box(s.family() == Family::Custom ? Family::Flat : s.family());
  return lattice(n, box);
}

// ---- verify ----

struct VerifyArgs {
  SpecArgs spec;
  std::vector<std::string> suites{"all"};
  std::vector<std::string> tols;
  int grid = 5;
  double z = 0.25;
  std::string out = ".";
  Format format = Format::Csv;
};

int cmd_verify(const VerifyArgs& a) {
  const SolutionSpec s = a.spec.build();
  VerifyOptions o;
  o.suites = a.suites;
  o.tolerances = parse_tolerances(a.tols);
  o.points = sample_points(s, a.grid);
  o.z = a.z;
  const Report r = verify(s, o);

  prepare_dir(a.out);
  {
    std::ofstream csv(out_path(a.out, "verify.csv"));
    r.write_csv(csv);
  }
  json sum = r.summary_json();
  sum["family"] = family_name(s.family());
  sum["label"] = s.label();
  std::ofstream(out_path(a.out, "summary.json")) << sum.dump(2) << "\n";

  if (a.format == Format::Json) {
    std::cout << sum.dump(2) << "\n";
  } else {
    std::cout << "check,max,mean,points,tol,pass\n";
    std::cout.precision(6);
    for (const auto& [name, c] : r.summary())
      std::cout << name << "," << c.max << "," << c.mean << "," << c.points << "," << c.tol << ","
                << (c.pass ? "yes" : "no") << "\n";
  }
  return r.pass() ? 0 : kExitFail;
}

// ---- evolve ----

struct EvolveArgs {
  std::string kase = "zero";
  std::string grid;
  std::optional<double> dt;
  double t_end = 1.0;
  double amplitude = 0.1;
  int snapshots = 1;
  bool residual = false;
  std::string input;
  std::string out = ".";
  Format format = Format::Csv;
};

int evolve_mms(const EvolveArgs& a) {
  const int n = a.grid.empty() ? 16 : parse_grid(a.grid).first;
  const double dt0 = a.dt.value_or(0.08);
  const std::vector<double> dts{dt0, dt0 / 2, dt0 / 4, dt0 / 8};
  const auto rows = mms_convergence(MmsCase{}, n, dts, a.t_end);
  Table t{{"dt", "error", "order"}, {}};
  bool ok = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    t.rows.push_back({rows[k].dt, rows[k].error, rows[k].order});
    if (k > 0 && rows[k].order < 3.7) ok = false;
  }
  prepare_dir(a.out);
  t.save(a.out, "convergence", a.format);
  t.write(std::cout, a.format);
  if (!ok) std::cerr << "observed order below 3.7\n";
  return ok ? 0 : kExitFail;
}

int evolve_breaking(const EvolveArgs& a) {
  const int nx = a.grid.empty() ? 1024 : parse_grid(a.grid).first;
  const BreakingEstimate b = breaking_time([](double x) { return std::sin(x); },
                                           [](double x) { return std::cos(x); }, nx,
                                           a.dt.value_or(0.002), 0.5, 0.8);
  const double rel = std::abs(b.estimated - b.predicted) / b.predicted;
  const json j{{"predicted", b.predicted}, {"estimated", b.estimated}, {"relative_error", rel},
               {"times", b.times},         {"inv_grad", b.inv_grad}};
  prepare_dir(a.out);
  std::ofstream(out_path(a.out, "breaking.json")) << j.dump(2) << "\n";
  std::cout << json{{"predicted", b.predicted}, {"estimated", b.estimated}, {"relative_error", rel}}.dump(2)
            << "\n";
  return rel < 0.02 ? 0 : kExitFail;
}

int cmd_evolve(const EvolveArgs& a) {
  if (a.kase == "mms") return evolve_mms(a);
  if (a.kase == "breaking") return evolve_breaking(a);

  GridState u0;
  if (a.kase == "file") {
    if (a.input.empty()) throw ConfigError("--case file needs --input state.bin");
    const fs::path bin(a.input);
    u0 = read_state(bin.string(), fs::path(bin).replace_extension(".json").string());
  } else {
    const auto [nx, ny] = parse_grid(a.grid.empty() ? "32x32" : a.grid);
    u0 = GridState(nx, ny, 2 * std::numbers::pi, 2 * std::numbers::pi);
    if (a.kase == "sine") {
      const double amp = a.amplitude;
      u0.fill([amp](double x, double y) { return amp * (std::sin(x) * std::cos(y) + 0.5 * std::cos(x + 2 * y)); });
    } else if (a.kase != "zero") {
      throw ConfigError("unknown case '" + a.kase + "'");
    }
  }
  if (a.snapshots < 1) throw ConfigError("--snapshots must be at least 1");

  EvolveConfig c;
  c.dt = a.dt.value_or(1e-3);
  c.t_end = a.t_end;
  std::vector<double> times;
  const double span = a.t_end - u0.time;
  for (int k = 1; k <= a.snapshots; ++k) times.push_back(u0.time + span * k / a.snapshots);
  const Trajectory tr = evolve(u0, c, times, a.residual);

  prepare_dir(a.out);
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    const std::string stem = "state_" + std::to_string(k);
    write_state(tr.states[k], out_path(a.out, stem + ".bin"), out_path(a.out, stem + ".json"));
  }
  Table t{{"time", "max_u", "max_ux", "mean_drift", "residual"}, {}};
  for (const Diagnostics& d : tr.diagnostics)
    t.rows.push_back({d.time, d.max_u, d.max_ux, d.mean_drift, d.residual});
  t.save(a.out, "diagnostics", a.format);
  t.write(std::cout, a.format);
  return 0;
}

// ---- transform ----

struct TransformArgs {
  SpecArgs spec;
  std::string kind = "galilean";
  std::vector<double> f, g, c{0.0, 1.0};
  std::vector<std::string> tols;
  int grid = 5;
  std::string out;
  Format format = Format::Csv;
};

int cmd_transform(const TransformArgs& a) {
  const SolutionSpec s = a.spec.build();
  CoordFreedom t;
  if (a.kind == "galilean") {
    t.kind = CoordFreedom::Kind::Galilean;
    t.f = Poly1(a.f);
    t.g = Poly1(a.g);
  } else if (a.kind == "conformal") {
    t.kind = CoordFreedom::Kind::Conformal;
    t.c = Poly1(a.c);
  } else {
    throw ConfigError("unknown transform kind '" + a.kind + "'");
  }
  const double tol = tolerance(parse_tolerances(a.tols), "dkp_residual", 1e-9);
  const SolutionSpec ts = apply(s, t);

  Table tab{{"x", "y", "t", "u", "dkp_residual"}, {}};
  bool ok = true;
  for (const Point3& p : sample_points(s, a.grid)) {
    try {
      const double r = dkp_residual(ts, p);
      tab.rows.push_back({p[0], p[1], p[2], ts.u(p), r});
      if (!(std::abs(r) < tol)) ok = false;
    } catch (const DomainError& e) {
      std::cerr << "(" << p[0] << ", " << p[1] << ", " << p[2] << "): " << e.what() << "\n";
      ok = false;
    }
  }
  prepare_dir(a.out);
  tab.save(a.out, "transform", a.format);
  tab.write(std::cout, a.format);
  return ok ? 0 : kExitFail;
}

// ---- intersect ----

struct IntersectArgs {
  std::vector<double> p1, p2;
  bool incidence = false;
  Format format = Format::Json;
};

int cmd_intersect(const IntersectArgs& a) {
  if (a.p1.size() != 3 || a.p2.size() != 3) throw ConfigError("--p1 and --p2 need three numbers t,y,x");
  const Vec3 p1(a.p1[0], a.p1[1], a.p1[2]), p2(a.p2[0], a.p2[1], a.p2[2]);
  const Intersection r = a.incidence ? incidence_roots(p1, p2) : curve_intersection(p1, p2);
  if (a.format == Format::Json) {
    json lam = json::array();
    for (const auto& l : r.lambda) lam.push_back({l.real(), l.imag()});
    std::cout << json{{"lambda", lam}, {"class", causal_name(r.causal)}, {"h", r.h}}.dump() << "\n";
  } else {
    std::cout << "re,im,class,h\n";
    std::cout.precision(17);
    for (const auto& l : r.lambda)
      std::cout << l.real() << "," << l.imag() << "," << causal_name(r.causal) << "," << r.h << "\n";
  }
  return 0;
}

// ---- darboux ----

struct DarbouxArgs {
  SpecArgs spec;
  std::vector<double> point;
  int N = 6;
  std::string chain = "onshell";
  std::vector<std::string> tols;
  Format format = Format::Csv;
};

int cmd_darboux(const DarbouxArgs& a) {
  const SolutionSpec s = a.spec.build();
  const Point3 p = point3(a.point, "--point");
  const double tol = tolerance(parse_tolerances(a.tols), "darboux", 1e-9);
  const Jet3 u = s.jet(p, 2), w = potential_w(s, p, 2);
  DarbouxChain c;
  if (a.chain == "onshell")
    c = onshell_darboux_chain(u, w, a.N);
  else if (a.chain == "literal")
    c = DarbouxChain{{u.truncated(1)}, {w.truncated(1)}};
  else
    throw ConfigError("unknown chain '" + a.chain + "'");
  const DarbouxReport r = darboux_check(p, u, w, c, a.N);
  Table t{{"order", "residual"}, {}};
  for (auto it = r.residual_by_order.rbegin(); it != r.residual_by_order.rend(); ++it)
    t.rows.push_back({static_cast<double>(it->first), it->second});
  t.write(std::cout, a.format);
  return r.max_over(-1, 2) < tol ? 0 : kExitFail;
}

// ---- heavenly ----

struct HeavenlyArgs {
  SpecArgs spec;
  std::vector<double> point;  // x, y, t, z; empty: lattice at z
  int grid = 3;
  double z = 0.25;
  std::vector<std::string> tols;
  Format format = Format::Csv;
};

int cmd_heavenly(const HeavenlyArgs& a) {
  const SolutionSpec s = a.spec.build();
  const double tol = tolerance(parse_tolerances(a.tols), "heavenly_metric", 1e-10);
  std::vector<Point4> pts;
  if (!a.point.empty()) {
    if (a.point.size() != 4) throw ConfigError("--point needs x,y,t,z");
    pts.push_back({a.point[0], a.point[1], a.point[2], a.point[3]});
  } else {
    for (const Point3& p : sample_points(s, a.grid)) pts.push_back({p[0], p[1], p[2], a.z});
  }
  Table t{{"x", "y", "t", "z", "theta_yy", "theta_yq", "theta_qq", "metric_gap"}, {}};
  bool ok = true;
  for (const Point4& p : pts) {
    const HeavenlyJet h = heavenly_jet(s, p);
    const double gap = heavenly_metric_check(s, p);
    t.rows.push_back({p[0], p[1], p[2], p[3], h.theta_yy, h.theta_yq, h.theta_qq, gap});
    if (!(gap < tol)) ok = false;
  }
  t.write(std::cout, a.format);
  return ok ? 0 : kExitFail;
}

// ---- geodesic ----

struct GeodesicArgs {
  SpecArgs spec;
  std::vector<double> x0, v0;
  double span = 1.0;
  int steps = 200;
  bool levi_civita = false;
  std::string out;
  Format format = Format::Csv;
};

int cmd_geodesic(const GeodesicArgs& a) {
  const SolutionSpec s = a.spec.build();
  const Point3 x0 = point3(a.x0, "--x0"), v0 = point3(a.v0, "--v0");
  if (a.steps < 1) throw ConfigError("--steps must be positive");
  const auto path = weyl_geodesic(ew_from_dkp(s), to_chart(x0), to_chart(v0), a.span, a.steps,
                                  !a.levi_civita);
  Table t{{"s", "x", "y", "t", "xdot", "ydot", "tdot"}, {}};
  for (const GeodesicState& g : path) {
    const Point3 q = from_chart(g.x), v = from_chart(g.xdot);
    t.rows.push_back({g.s, q[0], q[1], q[2], v[0], v[1], v[2]});
  }
  prepare_dir(a.out);
  t.save(a.out, "geodesic", a.format);
  t.write(std::cout, a.format);
  return 0;
}

// ---- sample ----

struct SampleArgs {
  SpecArgs spec;
  int grid = 5;
  std::string out;
  Format format = Format::Csv;
};

int cmd_sample(const SampleArgs& a) {
  const SolutionSpec s = a.spec.build();
  Table t{{"x", "y", "t", "u", "u_x", "u_y", "u_t", "dkp_residual"}, {}};
  for (const Point3& p : sample_points(s, a.grid)) {
    const Jet3 u = s.jet(p, 2);
    t.rows.push_back({p[0], p[1], p[2], u.value(), u.d(kX), u.d(kY), u.d(kT), dkp_residual(u)});
  }
  prepare_dir(a.out);
  t.save(a.out, "sample", a.format);
  t.write(std::cout, a.format);
  return 0;
}

void add_format(CLI::App* sub, Format& f) {
  const std::map<std::string, Format> names{{"csv", Format::Csv}, {"json", Format::Json}};
  sub->add_option("--format", f, "csv or json")->transform(CLI::CheckedTransformer(names));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dKP solutions, Einstein-Weyl and hyper-Kahler checks, and spectral evolution"};
  app.require_subcommand(1);
  std::string config_path;

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "run residual suites over a sample lattice");
  verify_cmd->add_option("--config", config_path, "JSON file keyed by flag names");
  va.spec.add_to(verify_cmd);
  verify_cmd->add_option("--suite", va.suites, "suite names or all")->delimiter(',');
  verify_cmd->add_option("--tol", va.tols, "name=value tolerance override");
  verify_cmd->add_option("--grid", va.grid, "lattice points per axis");
  verify_cmd->add_option("--z", va.z, "fibre coordinate for the 4D suites");
  verify_cmd->add_option("--out", va.out, "directory for verify.csv and summary.json");
  add_format(verify_cmd, va.format);

  EvolveArgs ea;
  auto* evolve_cmd = app.add_subcommand("evolve", "pseudo-spectral evolution on a periodic box");
  evolve_cmd->add_option("--config", config_path, "JSON file keyed by flag names");
  evolve_cmd->add_option("--case", ea.kase, "zero, sine, mms, breaking or file")
      ->check(CLI::IsMember({"zero", "sine", "mms", "breaking", "file"}));
  evolve_cmd->add_option("--grid", ea.grid, "NXxNY (or N)");
  evolve_cmd->add_option("--dt", ea.dt, "time step");
  evolve_cmd->add_option("--t-end", ea.t_end, "final time");
  evolve_cmd->add_option("--amplitude", ea.amplitude, "amplitude of the sine case");
  evolve_cmd->add_option("--snapshots", ea.snapshots, "equally spaced output states");
  evolve_cmd->add_flag("--residual", ea.residual, "space-time dKP residual at each output");
  evolve_cmd->add_option("--input", ea.input, "initial state .bin (sidecar .json next to it)");
  evolve_cmd->add_option("--out", ea.out, "output directory");
  add_format(evolve_cmd, ea.format);

  TransformArgs ta;
  auto* transform_cmd = app.add_subcommand("transform", "apply a Galilean or conformal freedom");
  transform_cmd->add_option("--config", config_path, "JSON file keyed by flag names");
  ta.spec.add_to(transform_cmd);
  transform_cmd->add_option("--kind", ta.kind, "galilean or conformal");
  transform_cmd->add_option("--f", ta.f, "f(t) coefficients")->delimiter(',');
  transform_cmd->add_option("--g", ta.g, "g(t) coefficients")->delimiter(',');
  transform_cmd->add_option("--c", ta.c, "c(t) coefficients, c' > 0")->delimiter(',');
  transform_cmd->add_option("--tol", ta.tols, "dkp_residual=value");
  transform_cmd->add_option("--grid", ta.grid, "lattice points per axis");
  transform_cmd->add_option("--out", ta.out, "output directory");
  add_format(transform_cmd, ta.format);

  IntersectArgs ia;
  auto* intersect_cmd = app.add_subcommand("intersect", "where two minitwistor curves meet");
  intersect_cmd->add_option("--config", config_path, "JSON file keyed by flag names");
  intersect_cmd->add_option("--p1", ia.p1, "t,y,x")->delimiter(',')->required();
  intersect_cmd->add_option("--p2", ia.p2, "t,y,x")->delimiter(',')->required();
  intersect_cmd->add_flag("--incidence", ia.incidence, "roots of xi(p1) = xi(p2)");
  add_format(intersect_cmd, ia.format);

  DarbouxArgs da;
  auto* darboux_cmd = app.add_subcommand("darboux", "Darboux series for the two-form at a point");
  darboux_cmd->add_option("--config", config_path, "JSON file keyed by flag names");
  da.spec.add_to(darboux_cmd);
  darboux_cmd->add_option("--point", da.point, "x,y,t")->delimiter(',')->required();
  darboux_cmd->add_option("--N", da.N, "truncation");
  darboux_cmd->add_option("--chain", da.chain, "onshell or literal");
  darboux_cmd->add_option("--tol", da.tols, "darboux=value");
  add_format(darboux_cmd, da.format);

  HeavenlyArgs ha;
  auto* heavenly_cmd = app.add_subcommand("heavenly", "second heavenly equation data and metric check");
  heavenly_cmd->add_option("--config", config_path, "JSON file keyed by flag names");
  ha.spec.add_to(heavenly_cmd);
  heavenly_cmd->add_option("--point", ha.point, "x,y,t,z")->delimiter(',');
  heavenly_cmd->add_option("--grid", ha.grid, "lattice points per axis");
  heavenly_cmd->add_option("--z", ha.z, "fibre coordinate for the lattice");
  heavenly_cmd->add_option("--tol", ha.tols, "heavenly_metric=value");
  add_format(heavenly_cmd, ha.format);

  GeodesicArgs ga;
  auto* geodesic_cmd = app.add_subcommand("geodesic", "Weyl geodesic of the dKP structure");
  geodesic_cmd->add_option("--config", config_path, "JSON file keyed by flag names");
  ga.spec.add_to(geodesic_cmd);
  geodesic_cmd->add_option("--x0", ga.x0, "x,y,t")->delimiter(',')->required();
  geodesic_cmd->add_option("--v0", ga.v0, "x,y,t components")->delimiter(',')->required();
  geodesic_cmd->add_option("--span", ga.span, "parameter length");
  geodesic_cmd->add_option("--steps", ga.steps, "RK4 steps");
  geodesic_cmd->add_flag("--levi-civita", ga.levi_civita, "drop the nu terms");
  geodesic_cmd->add_option("--out", ga.out, "output directory");
  add_format(geodesic_cmd, ga.format);

  SampleArgs sa;
  auto* sample_cmd = app.add_subcommand("sample", "u, first derivatives and residual on a lattice");
  sample_cmd->add_option("--config", config_path, "JSON file keyed by flag names");
  sa.spec.add_to(sample_cmd);
  sample_cmd->add_option("--grid", sa.grid, "lattice points per axis");
  sample_cmd->add_option("--out", sa.out, "output directory");
  add_format(sample_cmd, sa.format);

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) {
      // config entries fill the options the command line left unset
      std::vector<std::string> args(argv + 1, argv + argc);
      const auto extra = cli::config_args(*app.get_subcommands().front(), cli::read_config(config_path));
      args.insert(args.end(), extra.begin(), extra.end());
      std::reverse(args.begin(), args.end());
      app.clear();
      app.parse(args);
    }
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (verify_cmd->parsed()) return cmd_verify(va);
    if (evolve_cmd->parsed()) return cmd_evolve(ea);
    if (transform_cmd->parsed()) return cmd_transform(ta);
    if (intersect_cmd->parsed()) return cmd_intersect(ia);
    if (darboux_cmd->parsed()) return cmd_darboux(da);
    if (heavenly_cmd->parsed()) return cmd_heavenly(ha);
    if (geodesic_cmd->parsed()) return cmd_geodesic(ga);
    if (sample_cmd->parsed()) return cmd_sample(sa);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitConfig;
}
