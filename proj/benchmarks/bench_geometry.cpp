#include <benchmark/benchmark.h>

#include "dkpew/hyperkahler.hpp"
#include "dkpew/lax.hpp"
#include "dkpew/minitwistor.hpp"
#include "dkpew/sampling.hpp"
#include "dkpew/weyl.hpp"

using namespace dkpew;

namespace {

SolutionSpec hodograph() { return make_family(Family::Hodograph, {Poly1({0.0, 0.1, 0.05}, "x")}); }

void BM_Jet4(benchmark::State& st) {
  const SolutionSpec s = hodograph();
  const Point3 p{1.3, 1.4, 1.5};
  for (auto _ : st) benchmark::DoNotOptimize(s.jet(p, 4));
}
BENCHMARK(BM_Jet4);

void BM_DkpResidual(benchmark::State& st) {
  const SolutionSpec s = make_family(Family::NoKilling, {Poly1({0.2, 0.1})});
  const Point3 p{1.3, 1.4, 1.5};
  for (auto _ : st) benchmark::DoNotOptimize(dkp_residual(s, p));
}
BENCHMARK(BM_DkpResidual);

// FD Christoffels + Ricci of the Weyl connection at one point
void BM_EwResidual(benchmark::State& st) {
  const WeylStructure ws = ew_from_dkp(hodograph());
  const Vec3 q = to_chart({1.3, 1.4, 1.5});
  for (auto _ : st) benchmark::DoNotOptimize(ew_residual(ws, q));
}
BENCHMARK(BM_EwResidual)->Unit(benchmark::kMicrosecond);

void BM_Closure4D(benchmark::State& st) {
  const SolutionSpec s = make_family(Family::ConformalEinstein, {Poly1({1.0}), Poly1({0.5})});
  const Point4 p{1.2, 1.1, 1.6, 0.3};
  for (auto _ : st) benchmark::DoNotOptimize(closure_residual(s, SdForm::S11, p));
}
BENCHMARK(BM_Closure4D)->Unit(benchmark::kMicrosecond);

void BM_LaxIdentity(benchmark::State& st) {
  const SolutionSpec s = hodograph();
  const Point3 p{1.3, 1.4, 1.5};
  for (auto _ : st) benchmark::DoNotOptimize(lax_identity_residual(s, p));
}
BENCHMARK(BM_LaxIdentity)->Unit(benchmark::kMicrosecond);

void BM_DarbouxCheck(benchmark::State& st) {
  const SolutionSpec s = make_family(Family::ConformalEinstein, {Poly1({1.0})});
  const Point3 p{1.2, 1.4, 1.1};
  const Jet3 u = s.jet(p, 2), w = potential_w(s, p, 2);
  const DarbouxChain c = onshell_darboux_chain(u, w, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(darboux_check(p, u, w, c, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_DarbouxCheck)->Arg(4)->Arg(6)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_CurveIntersection(benchmark::State& st) {
  Rng rng(1);
  std::uniform_real_distribution<double> d(-2, 2);
  std::vector<Vec3> pts;
  for (int k = 0; k < 256; ++k) pts.emplace_back(d(rng), d(rng), d(rng));
  std::size_t k = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(curve_intersection(pts[k % 256], pts[(k + 1) % 256]));
    ++k;
  }
}
BENCHMARK(BM_CurveIntersection);

}  // namespace

BENCHMARK_MAIN();
