#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "dkpew/evolve.hpp"

using namespace dkpew;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

GridState smooth(int n) {
  GridState s(n, n, kTwoPi, kTwoPi);
  s.fill([](double x, double y) { return 0.1 * std::sin(x) * std::cos(y) + 0.05 * std::cos(x + 2 * y); });
  return s;
}

void BM_Rk4Step(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  SpectralSolver sol(n, n, kTwoPi, kTwoPi);
  EvolveConfig c;
  c.dt = 1e-4;
  GridState s = smooth(n);
  for (auto _ : st) s = sol.step(s, c);
  st.SetItemsProcessed(st.iterations() * n * n);
}
BENCHMARK(BM_Rk4Step)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMicrosecond);

void BM_SpectralDx(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  SpectralSolver sol(n, n, kTwoPi, kTwoPi);
  const GridState s = smooth(n);
  for (auto _ : st) benchmark::DoNotOptimize(sol.dx(s.u));
}
BENCHMARK(BM_SpectralDx)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMicrosecond);

void BM_SnapshotJet(benchmark::State& st) {
  EvolveConfig c;
  c.dt = 5e-3;
  c.t_end = 0.3;
  const Trajectory tr = evolve(smooth(16), c, {0.0 + 0.15, 0.2, 0.25, 0.3});
  const SolutionSpec s = snapshot_spec(tr.states);
  const Point3 p{1.0, 2.0, 0.22};
  for (auto _ : st) benchmark::DoNotOptimize(s.jet(p, 2));
}
BENCHMARK(BM_SnapshotJet)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
