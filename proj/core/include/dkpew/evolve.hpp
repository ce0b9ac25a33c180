#pragma once

// Pseudo-spectral RK4 for dKP on a doubly periodic box, in the nonlocal form
//   u_t = u u_x + dx^-1 u_yy (+ forcing),
// with dx^-1 acting as 1/(i kx) and killing the kx = 0 column.
// Storage is row-major with x fastest: u[j * nx + i] = u(x_i, y_j).

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "dkpew/solutions.hpp"

namespace dkpew {

struct GridState {
  int nx = 0, ny = 0;
  double Lx = 0.0, Ly = 0.0;
  std::vector<double> u;
  double time = 0.0;

  GridState() = default;
  GridState(int nx_, int ny_, double Lx_, double Ly_, double t = 0.0);

  double dx() const { return Lx / nx; }
  double dy() const { return Ly / ny; }
  double x(int i) const { return i * dx(); }
  double y(int j) const { return j * dy(); }
  double& at(int i, int j) { return u[static_cast<std::size_t>(j) * nx + i]; }
  double at(int i, int j) const { return u[static_cast<std::size_t>(j) * nx + i]; }

  /// Fill from u(x, y).
  void fill(const std::function<double(double, double)>& f);
};

using Forcing = std::function<double(double x, double y, double t)>;

struct EvolveConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  double dealias = 2.0 / 3.0;
  Forcing forcing;  // empty means none
  double cfl = 0.5;
  // dt * max ky^2 / |kx| over retained modes; RK4 is stable on the imaginary axis up to 2.83.
  double dispersive_limit = 2.5;
  int max_halvings = 10;
};

struct StepInfo {
  int halvings = 0;
  int substeps = 1;
};

/// Holds the FFTW plans for one grid shape.
class SpectralSolver {
 public:
  SpectralSolver(int nx, int ny, double Lx, double Ly, double dealias = 2.0 / 3.0);
  ~SpectralSolver();
  SpectralSolver(const SpectralSolver&) = delete;
  SpectralSolver& operator=(const SpectralSolver&) = delete;

  /// Advances by config.dt, halving internally when the CFL or dispersive bound fails.
  GridState step(const GridState& s, const EvolveConfig& c, StepInfo* info = nullptr);

  /// Spectral derivatives of a grid field (same layout as GridState::u).
  std::vector<double> dx(const std::vector<double>& f);
  std::vector<double> dxx(const std::vector<double>& f);
  std::vector<double> dyy(const std::vector<double>& f);

  /// The 2/3-rule projection applied to a grid field.
  std::vector<double> project(const std::vector<double>& f);

  /// Largest ky^2 / |kx| over retained modes with kx != 0.
  double dispersive_rate() const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

/// One step with a throwaway solver.
GridState step(const GridState& s, const EvolveConfig& c);

struct Diagnostics {
  double time = 0.0;
  double max_u = 0.0;
  double max_ux = 0.0;
  double mean_drift = 0.0;  // max over y of |int u dx (t) - int u dx (0)|
  double residual = -1.0;   // space-time FD dKP residual, -1 when not computed
};

struct Trajectory {
  std::vector<GridState> states;  // at the requested output times
  std::vector<Diagnostics> diagnostics;
};

/// Integrates to config.t_end. Output times are snapped to the step grid; an empty
/// list records only the final state. With `residual`, each output carries
/// max |u_xt - u_x^2 - u u_xx - u_yy| using a centred difference in t over one step.
Trajectory evolve(const GridState& u0, const EvolveConfig& c,
                  const std::vector<double>& output_times = {}, bool residual = false);

/// The x-line integral of u for each row j.
std::vector<double> line_integrals(const GridState& s);

/// max |u_xt - u_x^2 - u u_xx - u_yy| at `cur` with u_xt from (next - prev) / (2 dt).
double spacetime_residual(const GridState& prev, const GridState& cur, const GridState& next,
                          double dt);

/// u* = A sin(kx x - w t) cos(ky y) and the forcing that makes it exact.
struct MmsCase {
  double A = 0.5, kx = 1.0, ky = 1.0, omega = 1.0;
  double exact(double x, double y, double t) const;
  double forcing(double x, double y, double t) const;
};

struct MmsRow {
  double dt = 0.0;
  double error = 0.0;  // max |u - u*| at t_end
  double order = 0.0;  // log2 of the error ratio to the previous row, 0 for the first
};

/// Runs the manufactured case at each dt (halving sequence expected) on an n x n box of side 2 pi.
std::vector<MmsRow> mms_convergence(const MmsCase& m, int n, const std::vector<double>& dts,
                                    double t_end);

struct BreakingEstimate {
  double predicted = 0.0;  // 1 / max f'
  double estimated = 0.0;  // zero of the linear fit of 1 / max|u_x| over the window
  std::vector<double> times, inv_grad;
};

/// y-independent data u0(x) on [0, 2 pi): fits 1/max|u_x| on [fit_lo, fit_hi]
/// and extrapolates to zero.
BreakingEstimate breaking_time(const std::function<double(double)>& u0,
                               const std::function<double(double)>& du0, int nx, double dt,
                               double fit_lo, double fit_hi);

/// Spec whose u is the trigonometric interpolant of each snapshot, joined by
/// Lagrange interpolation in t (cubic for four snapshots). Exact jets
/// of the interpolant, so curvature checks see only discretization error.
SolutionSpec snapshot_spec(const std::vector<GridState>& snaps, double dealias = 2.0 / 3.0);

/// Flat little-endian doubles plus a JSON sidecar {nx, ny, Lx, Ly, time}.
void write_state(const GridState& s, const std::string& bin_path, const std::string& json_path);
GridState read_state(const std::string& bin_path, const std::string& json_path);

}  // namespace dkpew
