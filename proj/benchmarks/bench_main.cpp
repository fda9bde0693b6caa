#include <benchmark/benchmark.h>

#include <bcdual/duality.hpp>
#include <bcdual/dynamics.hpp>
#include <bcdual/laxops.hpp>
#include <bcdual/matengine.hpp>
#include <bcdual/sampling.hpp>

using namespace bcdual;

namespace {

const Couplings& couplings() {
  static const Couplings c = couplings_from_rsvd(-1, 2, 0.5);
  return c;
}

PhasePointS point_S(int n) {
  std::mt19937_64 rng(1);
  return sampling::random_point_S(rng, n);
}

PhasePointR point_R(int n) {
  std::mt19937_64 rng(2);
  return sampling::random_point_R(rng, n);
}

void BM_LaxEigenvalues(benchmark::State& state) {
  const PhasePointS pt = point_S(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(action_variables(pt, couplings()));
}
BENCHMARK(BM_LaxEigenvalues)->Arg(2)->Arg(4)->Arg(6);

void BM_DualizeForward(benchmark::State& state) {
  const PhasePointS pt = point_S(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dualize_S_to_R(pt, couplings()));
}
BENCHMARK(BM_DualizeForward)->Arg(2)->Arg(4)->Arg(6);

void BM_DualizeInverse(benchmark::State& state) {
  const PhasePointR pt = point_R(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dualize_R_to_S(pt, couplings()));
}
BENCHMARK(BM_DualizeInverse)->Arg(2)->Arg(4)->Arg(6);

void BM_SolveSutherland(benchmark::State& state) {
  const PhasePointS pt = point_S(3);
  const TimeGrid grid = TimeGrid::uniform(-5, 5, 101);
  SolveOptions o;
  o.method = state.range(0) ? Method::kOde : Method::kDuality;
  for (auto _ : state) benchmark::DoNotOptimize(solve_sutherland(pt, grid, couplings(), o));
}
BENCHMARK(BM_SolveSutherland)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SolveRsvd(benchmark::State& state) {
  const PhasePointR pt = point_R(3);
  const TimeGrid grid = TimeGrid::uniform(-5, 5, 101);
  SolveOptions o;
  o.method = state.range(0) ? Method::kOde : Method::kDuality;
  for (auto _ : state) benchmark::DoNotOptimize(solve_rsvd(pt, grid, couplings(), o));
}
BENCHMARK(BM_SolveRsvd)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
