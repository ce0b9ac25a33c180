#include "dkpew/evolve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>

#include <fftw3.h>
#include <nlohmann/json.hpp>

#include "dkpew/errors.hpp"

namespace dkpew {

namespace {

using cplx = std::complex<double>;
using Spectrum = std::vector<cplx>;

bool power_of_two(int n) { return n > 0 && std::has_single_bit(static_cast<unsigned>(n)); }

void check_finite(const std::vector<double>& u, const char* where) {
  for (double v : u)
    if (!std::isfinite(v)) throw NonFiniteError(std::string(where) + ": non-finite value in u");
}

}  // namespace

GridState::GridState(int nx_, int ny_, double Lx_, double Ly_, double t)
    : nx(nx_), ny(ny_), Lx(Lx_), Ly(Ly_), u(static_cast<std::size_t>(nx_) * ny_, 0.0), time(t) {
  if (!power_of_two(nx) || !power_of_two(ny))
    throw ConfigError("GridState: nx and ny must be powers of two");
  if (!(Lx > 0.0) || !(Ly > 0.0)) throw ConfigError("GridState: box lengths must be positive");
}

void GridState::fill(const std::function<double(double, double)>& f) {
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) at(i, j) = f(x(i), y(j));
}

struct SpectralSolver::Impl {
  int nx, ny, nxh;
  double Lx, Ly;
  double* rbuf = nullptr;
  fftw_complex* cbuf = nullptr;
  fftw_plan fwd = nullptr, bwd = nullptr;
  std::vector<double> kx, ky;
  std::vector<char> keep;
  std::vector<cplx> lin;  // i ky^2 / kx, zero on the kx = 0 column

  Impl(int nx_, int ny_, double Lx_, double Ly_, double dealias)
      : nx(nx_), ny(ny_), nxh(nx_ / 2 + 1), Lx(Lx_), Ly(Ly_) {
    if (!power_of_two(nx) || !power_of_two(ny))
      throw ConfigError("SpectralSolver: nx and ny must be powers of two");
    if (!(dealias > 0.0 && dealias <= 1.0))
      throw ConfigError("SpectralSolver: dealias fraction must lie in (0, 1]");
    rbuf = fftw_alloc_real(static_cast<std::size_t>(nx) * ny);
    cbuf = fftw_alloc_complex(static_cast<std::size_t>(nxh) * ny);
    fwd = fftw_plan_dft_r2c_2d(ny, nx, rbuf, cbuf, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_2d(ny, nx, cbuf, rbuf, FFTW_ESTIMATE);
    kx.resize(nxh);
    ky.resize(ny);
    for (int i = 0; i < nxh; ++i) kx[i] = 2.0 * std::numbers::pi * i / Lx;
    for (int j = 0; j < ny; ++j) {
      const int jj = j <= ny / 2 ? j : j - ny;
      ky[j] = 2.0 * std::numbers::pi * jj / Ly;
    }
    keep.assign(static_cast<std::size_t>(nxh) * ny, 0);
    lin.assign(keep.size(), 0.0);
    const double cx = dealias * nx / 2.0, cy = dealias * ny / 2.0;
    for (int j = 0; j < ny; ++j) {
      const int jj = j <= ny / 2 ? j : j - ny;
      for (int i = 0; i < nxh; ++i) {
        const std::size_t k = idx(i, j);
        // Nyquist rows and columns are dropped even at dealias = 1.
        keep[k] = i < nx / 2 && std::abs(jj) < ny / 2 && i <= cx && std::abs(jj) <= cy;
        if (i > 0 && keep[k]) lin[k] = cplx(0.0, ky[j] * ky[j] / kx[i]);
      }
    }
  }

  ~Impl() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(rbuf);
    fftw_free(cbuf);
  }

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * nxh + i; }
  std::size_t nreal() const { return static_cast<std::size_t>(nx) * ny; }

  Spectrum forward(const std::vector<double>& f) {
    std::copy(f.begin(), f.end(), rbuf);
    fftw_execute(fwd);
    Spectrum s(static_cast<std::size_t>(nxh) * ny);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = cplx(cbuf[k][0], cbuf[k][1]);
    return s;
  }

  std::vector<double> backward(const Spectrum& s) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      cbuf[k][0] = s[k].real();
      cbuf[k][1] = s[k].imag();
    }
    fftw_execute(bwd);
    std::vector<double> f(nreal());
    const double inv = 1.0 / static_cast<double>(nreal());
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = rbuf[k] * inv;
    return f;
  }

  void apply_mask(Spectrum& s) const {
    for (std::size_t k = 0; k < s.size(); ++k)
      if (!keep[k]) s[k] = 0.0;
  }

  std::vector<double> grid_of(const Forcing& f, double t) const {
    std::vector<double> g(nreal());
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        g[static_cast<std::size_t>(j) * nx + i] = f(i * Lx / nx, j * Ly / ny, t);
    return g;
  }

  // u_t in spectral space: (1/2) d_x (u^2) + dx^-1 u_yy + f.
  Spectrum rhs(const Spectrum& uh, double t, const Forcing& forcing) {
    std::vector<double> u = backward(uh);
    for (double& v : u) v *= v;
    Spectrum sq = forward(u);
    Spectrum out(uh.size());
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nxh; ++i) {
        const std::size_t k = idx(i, j);
        if (!keep[k]) continue;
        out[k] = cplx(0.0, 0.5 * kx[i]) * sq[k] + lin[k] * uh[k];
      }
    if (forcing) {
      Spectrum fh = forward(grid_of(forcing, t));
      for (std::size_t k = 0; k < out.size(); ++k)
        if (keep[k]) out[k] += fh[k];
    }
    return out;
  }

  void rk4(Spectrum& uh, double t, double h, const Forcing& forcing) {
    const std::size_t n = uh.size();
    Spectrum tmp(n);
    const Spectrum k1 = rhs(uh, t, forcing);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = uh[k] + 0.5 * h * k1[k];
    const Spectrum k2 = rhs(tmp, t + 0.5 * h, forcing);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = uh[k] + 0.5 * h * k2[k];
    const Spectrum k3 = rhs(tmp, t + 0.5 * h, forcing);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = uh[k] + h * k3[k];
    const Spectrum k4 = rhs(tmp, t + h, forcing);
    for (std::size_t k = 0; k < n; ++k)
      uh[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
  }

  double dispersive_rate() const {
    double m = 0.0;
    for (int j = 0; j < ny; ++j)
      for (int i = 1; i < nxh; ++i)
        if (keep[idx(i, j)]) m = std::max(m, ky[j] * ky[j] / kx[i]);
    return m;
  }

  // Halvings needed so both the CFL and the dispersive bound hold.
  int halvings(double max_u, const EvolveConfig& c) const {
    const double dxg = Lx / nx, rate = dispersive_rate();
    double h = c.dt;
    for (int k = 0; k <= c.max_halvings; ++k, h *= 0.5)
      if (h * max_u / dxg <= c.cfl && h * rate <= c.dispersive_limit) return k;
    throw CflError("step: CFL bound still violated after " + std::to_string(c.max_halvings) +
                   " halvings of dt");
  }

  void check_kx0(const Spectrum& uh) const {
    // kx = 0 modes with ky != 0 have no dx^-1; the data must not carry them.
    double big = 0.0, bad = 0.0;
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nxh; ++i) {
        const double a = std::abs(uh[idx(i, j)]);
        big = std::max(big, a);
        if (i == 0 && j != 0) bad = std::max(bad, a);
      }
    if (bad > 1e-10 * std::max(big, 1.0))
      throw DomainError("evolve: the x-mean of u must not depend on y");
  }

  // Advances the spectral state by dt, subdividing as needed.
  StepInfo advance(Spectrum& uh, double t, const EvolveConfig& c) {
    const std::vector<double> u = backward(uh);
    double max_u = 0.0;
    for (double v : u) max_u = std::max(max_u, std::abs(v));
    StepInfo info;
    info.halvings = halvings(max_u, c);
    info.substeps = 1 << info.halvings;
    const double h = c.dt / info.substeps;
    for (int s = 0; s < info.substeps; ++s) rk4(uh, t + s * h, h, c.forcing);
    for (const cplx& v : uh)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NonFiniteError("step: non-finite value in u");
    return info;
  }

  std::vector<double> derivative(const std::vector<double>& f, int ax, int ay) {
    Spectrum s = forward(f);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nxh; ++i) {
        cplx m = 1.0;
        for (int a = 0; a < ax; ++a) m *= cplx(0.0, kx[i]);
        for (int a = 0; a < ay; ++a) m *= cplx(0.0, ky[j]);
        // Odd derivatives of the Nyquist modes are not representable.
        if ((ax % 2 == 1 && i == nx / 2) || (ay % 2 == 1 && j == ny / 2)) m = 0.0;
        s[idx(i, j)] *= m;
      }
    return backward(s);
  }
};

SpectralSolver::SpectralSolver(int nx, int ny, double Lx, double Ly, double dealias)
    : impl_(std::make_unique<Impl>(nx, ny, Lx, Ly, dealias)) {}

SpectralSolver::~SpectralSolver() = default;

GridState SpectralSolver::step(const GridState& s, const EvolveConfig& c, StepInfo* info) {
  if (s.nx != impl_->nx || s.ny != impl_->ny) throw ConfigError("step: grid shape mismatch");
  if (!(c.dt > 0.0)) throw ConfigError("step: dt must be positive");
  check_finite(s.u, "step");
  Spectrum uh = impl_->forward(s.u);
  impl_->check_kx0(uh);
  impl_->apply_mask(uh);
  const StepInfo si = impl_->advance(uh, s.time, c);
  if (info) *info = si;
  GridState out = s;
  out.u = impl_->backward(uh);
  out.time = s.time + c.dt;
  return out;
}

std::vector<double> SpectralSolver::dx(const std::vector<double>& f) {
  return impl_->derivative(f, 1, 0);
}
std::vector<double> SpectralSolver::dxx(const std::vector<double>& f) {
  return impl_->derivative(f, 2, 0);
}
std::vector<double> SpectralSolver::dyy(const std::vector<double>& f) {
  return impl_->derivative(f, 0, 2);
}

std::vector<double> SpectralSolver::project(const std::vector<double>& f) {
  Spectrum s = impl_->forward(f);
  impl_->apply_mask(s);
  return impl_->backward(s);
}

double SpectralSolver::dispersive_rate() const { return impl_->dispersive_rate(); }

GridState step(const GridState& s, const EvolveConfig& c) {
  SpectralSolver solver(s.nx, s.ny, s.Lx, s.Ly, c.dealias);
  return solver.step(s, c);
}

std::vector<double> line_integrals(const GridState& s) {
  std::vector<double> out(s.ny, 0.0);
  for (int j = 0; j < s.ny; ++j) {
    double acc = 0.0;
    for (int i = 0; i < s.nx; ++i) acc += s.at(i, j);
    out[j] = acc * s.dx();
  }
  return out;
}

namespace {

double residual_with(SpectralSolver& sv, const GridState& prev, const GridState& cur,
                     const GridState& next, double dt) {
  const auto uxp = sv.dx(prev.u), uxn = sv.dx(next.u);
  const auto ux = sv.dx(cur.u), uxx = sv.dxx(cur.u), uyy = sv.dyy(cur.u);
  double m = 0.0;
  for (std::size_t k = 0; k < cur.u.size(); ++k) {
    const double uxt = (uxn[k] - uxp[k]) / (2.0 * dt);
    m = std::max(m, std::abs(uxt - ux[k] * ux[k] - cur.u[k] * uxx[k] - uyy[k]));
  }
  return m;
}

}  // namespace

double spacetime_residual(const GridState& prev, const GridState& cur, const GridState& next,
                          double dt) {
  SpectralSolver sv(cur.nx, cur.ny, cur.Lx, cur.Ly, 1.0);
  return residual_with(sv, prev, cur, next, dt);
}

Trajectory evolve(const GridState& u0, const EvolveConfig& c,
                  const std::vector<double>& output_times, bool residual) {
  if (!(c.dt > 0.0)) throw ConfigError("evolve: dt must be positive");
  if (!(c.t_end >= u0.time)) throw ConfigError("evolve: t_end before the initial time");
  check_finite(u0.u, "evolve");

  SpectralSolver sv(u0.nx, u0.ny, u0.Lx, u0.Ly, c.dealias);

  const long nsteps = std::lround((c.t_end - u0.time) / c.dt);
  std::vector<long> marks;
  for (double t : output_times) {
    const long n = std::lround((t - u0.time) / c.dt);
    if (n < 0 || n > nsteps) throw ConfigError("evolve: output time outside [t0, t_end]");
    marks.push_back(n);
  }
  if (marks.empty()) marks.push_back(nsteps);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  GridState cur = u0;
  cur.u = sv.project(u0.u);
  const std::vector<double> base = line_integrals(cur);

  auto diagnose = [&](const GridState& s) {
    Diagnostics d;
    d.time = s.time;
    for (double v : s.u) d.max_u = std::max(d.max_u, std::abs(v));
    for (double v : sv.dx(s.u)) d.max_ux = std::max(d.max_ux, std::abs(v));
    const auto li = line_integrals(s);
    for (std::size_t j = 0; j < li.size(); ++j)
      d.mean_drift = std::max(d.mean_drift, std::abs(li[j] - base[j]));
    return d;
  };

  Trajectory tr;
  GridState prev;
  bool have_prev = false;
  std::size_t next_mark = 0;
  for (long n = 0; next_mark < marks.size(); ++n) {
    const bool out_here = marks[next_mark] == n;
    if (out_here) {
      tr.states.push_back(cur);
      tr.diagnostics.push_back(diagnose(cur));
      ++next_mark;
    }
    const bool need_next = n < nsteps || (residual && out_here && have_prev);
    if (!need_next) break;
    GridState nxt = sv.step(cur, c);
    if (residual && out_here && have_prev)
      tr.diagnostics.back().residual = residual_with(sv, prev, cur, nxt, c.dt);
    prev = std::move(cur);
    have_prev = true;
    cur = std::move(nxt);
  }
  return tr;
}

double MmsCase::exact(double x, double y, double t) const {
  return A * std::sin(kx * x - omega * t) * std::cos(ky * y);
}

double MmsCase::forcing(double x, double y, double t) const {
  const double ph = kx * x - omega * t;
  const double cy = std::cos(ky * y);
  const double u = A * std::sin(ph) * cy;
  const double ut = -A * omega * std::cos(ph) * cy;
  const double ux = A * kx * std::cos(ph) * cy;
  const double nonlocal = (ky * ky / kx) * A * std::cos(ph) * cy;  // dx^-1 u_yy
  return ut - u * ux - nonlocal;
}

std::vector<MmsRow> mms_convergence(const MmsCase& m, int n, const std::vector<double>& dts,
                                    double t_end) {
  const double L = 2.0 * std::numbers::pi;
  std::vector<MmsRow> rows;
  for (double dt : dts) {
    GridState s(n, n, L, L);
    s.fill([&](double x, double y) { return m.exact(x, y, 0.0); });
    EvolveConfig c;
    c.dt = dt;
    c.t_end = t_end;
    c.forcing = [&m](double x, double y, double t) { return m.forcing(x, y, t); };
    const Trajectory tr = evolve(s, c);
    const GridState& f = tr.states.back();
    MmsRow r;
    r.dt = dt;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        r.error = std::max(r.error, std::abs(f.at(i, j) - m.exact(f.x(i), f.y(j), f.time)));
    if (!rows.empty() && r.error > 0.0)
      r.order = std::log2(rows.back().error / r.error) / std::log2(rows.back().dt / dt);
    rows.push_back(r);
  }
  return rows;
}

BreakingEstimate breaking_time(const std::function<double(double)>& u0,
                               const std::function<double(double)>& du0, int nx, double dt,
                               double fit_lo, double fit_hi) {
  if (!(fit_hi > fit_lo)) throw ConfigError("breaking_time: empty fit window");
  const double L = 2.0 * std::numbers::pi;
  BreakingEstimate be;
  double fmax = 0.0;
  const int fine = 16 * nx;
  for (int i = 0; i < fine; ++i) fmax = std::max(fmax, du0(L * i / fine));
  if (!(fmax > 0.0)) throw DomainError("breaking_time: data never steepens (max f' <= 0)");
  be.predicted = 1.0 / fmax;

  GridState s(nx, 4, L, L);
  s.fill([&](double x, double) { return u0(x); });
  EvolveConfig c;
  c.dt = dt;
  c.t_end = fit_hi;
  std::vector<double> outs;
  for (double t = fit_lo; t <= fit_hi + 1e-12; t += (fit_hi - fit_lo) / 30.0) outs.push_back(t);
  const Trajectory tr = evolve(s, c, outs);
  for (const auto& d : tr.diagnostics) {
    be.times.push_back(d.time);
    be.inv_grad.push_back(1.0 / d.max_ux);
  }
  // least squares line a + b t
  const double n = static_cast<double>(be.times.size());
  double st = 0, sg = 0, stt = 0, stg = 0;
  for (std::size_t k = 0; k < be.times.size(); ++k) {
    st += be.times[k];
    sg += be.inv_grad[k];
    stt += be.times[k] * be.times[k];
    stg += be.times[k] * be.inv_grad[k];
  }
  const double b = (n * stg - st * sg) / (n * stt - st * st);
  const double a = (sg - b * st) / n;
  if (!(b < 0.0)) throw DomainError("breaking_time: gradient is not growing in the fit window");
  be.estimated = -a / b;
  return be;
}

SolutionSpec snapshot_spec(const std::vector<GridState>& snaps, double dealias) {
  if (snaps.size() < 2) throw ConfigError("snapshot_spec: need at least two snapshots");
  const GridState& g0 = snaps.front();
  for (const auto& s : snaps)
    if (s.nx != g0.nx || s.ny != g0.ny || s.Lx != g0.Lx || s.Ly != g0.Ly)
      throw ConfigError("snapshot_spec: snapshots must share a grid");

  struct Mode {
    int i, j;
    double kx, ky, w;
  };
  struct Data {
    std::vector<Mode> modes;
    std::vector<std::vector<cplx>> coef;  // [snapshot][mode], already normalized
    std::vector<double> times;
    std::vector<double> kxs, kys;  // distinct wavenumbers used
  };
  auto data = std::make_shared<Data>();

  SpectralSolver::Impl im(g0.nx, g0.ny, g0.Lx, g0.Ly, dealias);
  const double norm = 1.0 / (static_cast<double>(g0.nx) * g0.ny);
  for (int j = 0; j < g0.ny; ++j)
    for (int i = 0; i < im.nxh; ++i)
      if (im.keep[im.idx(i, j)]) data->modes.push_back({i, j, im.kx[i], im.ky[j], i == 0 ? 1.0 : 2.0});
  for (const auto& s : snaps) {
    const Spectrum sp = im.forward(s.u);
    std::vector<cplx> c;
    for (const auto& m : data->modes) c.push_back(sp[im.idx(m.i, m.j)] * norm);
    data->coef.push_back(std::move(c));
    data->times.push_back(s.time);
  }
  data->kxs = im.kx;
  data->kys = im.ky;

  auto eval = [data](const std::array<Jet3, 3>& a) {
    const Jet3& X = a[0];
    const Jet3& Y = a[1];
    const Jet3& T = a[2];
    const int ord = X.order();
    const Jet3 zero = Jet3::constant(0.0, ord);
    std::vector<Jet3> cx, sx, cy, sy;
    for (double k : data->kxs) {
      cx.push_back(cos(k * X));
      sx.push_back(sin(k * X));
    }
    for (double k : data->kys) {
      cy.push_back(cos(k * Y));
      sy.push_back(sin(k * Y));
    }
    Jet3 u = zero;
    for (std::size_t s = 0; s < data->times.size(); ++s) {
      // Re(c e^{i(a+b)}) = cos a (Rc cos b - Ic sin b) - sin a (Rc sin b + Ic cos b)
      std::vector<Jet3> P(cx.size(), zero), Q(cx.size(), zero);
      std::vector<char> used(cx.size(), 0);
      for (std::size_t m = 0; m < data->modes.size(); ++m) {
        const Mode& md = data->modes[m];
        const cplx c = md.w * data->coef[s][m];
        P[md.i] += c.real() * cy[md.j] - c.imag() * sy[md.j];
        Q[md.i] += c.real() * sy[md.j] + c.imag() * cy[md.j];
        used[md.i] = 1;
      }
      Jet3 us = zero;
      for (std::size_t i = 0; i < cx.size(); ++i)
        if (used[i]) us += cx[i] * P[i] - sx[i] * Q[i];
      Jet3 lag = Jet3::constant(1.0, ord);
      for (std::size_t m = 0; m < data->times.size(); ++m)
        if (m != s) lag = lag * (T - data->times[m]) / (data->times[s] - data->times[m]);
      u += lag * us;
    }
    return u;
  };
  const double t0 = data->times.front(), t1 = data->times.back();
  auto guard = [t0, t1](const Point3& p) {
    return p[2] >= std::min(t0, t1) && p[2] <= std::max(t0, t1);
  };
  return SolutionSpec::custom(eval, guard, "snapshots", "t within the snapshot span");
}

void write_state(const GridState& s, const std::string& bin_path, const std::string& json_path) {
  static_assert(std::endian::native == std::endian::little, "binary format is little-endian");
  std::ofstream b(bin_path, std::ios::binary);
  if (!b) throw ConfigError("write_state: cannot open " + bin_path);
  b.write(reinterpret_cast<const char*>(s.u.data()),
          static_cast<std::streamsize>(s.u.size() * sizeof(double)));
  std::ofstream j(json_path);
  if (!j) throw ConfigError("write_state: cannot open " + json_path);
  const nlohmann::json meta{{"nx", s.nx}, {"ny", s.ny}, {"Lx", s.Lx}, {"Ly", s.Ly}, {"time", s.time}};
  j << meta.dump(2) << "\n";
}

GridState read_state(const std::string& bin_path, const std::string& json_path) {
  std::ifstream j(json_path);
  if (!j) throw ConfigError("read_state: cannot open " + json_path);
  const nlohmann::json meta = nlohmann::json::parse(j);
  for (const auto& [key, _] : meta.items())
    if (key != "nx" && key != "ny" && key != "Lx" && key != "Ly" && key != "time")
      throw ConfigError("read_state: unknown key '" + key + "'");
  GridState s(meta.at("nx").get<int>(), meta.at("ny").get<int>(), meta.at("Lx").get<double>(),
              meta.at("Ly").get<double>(), meta.value("time", 0.0));
  std::ifstream b(bin_path, std::ios::binary);
  if (!b) throw ConfigError("read_state: cannot open " + bin_path);
  b.read(reinterpret_cast<char*>(s.u.data()),
         static_cast<std::streamsize>(s.u.size() * sizeof(double)));
  if (b.gcount() != static_cast<std::streamsize>(s.u.size() * sizeof(double)))
    throw ConfigError("read_state: " + bin_path + " is shorter than nx * ny doubles");
  check_finite(s.u, "read_state");
  return s;
}

}  // namespace dkpew
