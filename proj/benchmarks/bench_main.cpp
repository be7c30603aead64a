#include <benchmark/benchmark.h>

#include "srhsd/mc_engine.hpp"
#include "srhsd/posthoc.hpp"
#include "srhsd/range_dist.hpp"

using namespace srhsd;

static void BM_PtukeyInf(benchmark::State& state) {
  const RangeDistParams prm{static_cast<int>(state.range(0)), kInfiniteDf};
  double q = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptukey(q, prm));
    q = q == 3.0 ? 3.1 : 3.0;
  }
}
BENCHMARK(BM_PtukeyInf)->Arg(2)->Arg(16)->Arg(34);

static void BM_PtukeyFinite(benchmark::State& state) {
  const RangeDistParams prm{16, static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(ptukey(4.0, prm));
}
BENCHMARK(BM_PtukeyFinite)->Arg(2)->Arg(5)->Arg(30)->Arg(1007)->Unit(benchmark::kMillisecond);

static void BM_QtukeyInf(benchmark::State& state) {
  const RangeDistParams prm{static_cast<int>(state.range(0)), kInfiniteDf};
  for (auto _ : state) benchmark::DoNotOptimize(qtukey(0.95, prm));
}
BENCHMARK(BM_QtukeyInf)->Arg(5)->Arg(16)->Unit(benchmark::kMicrosecond);

static void BM_QtukeyFinite(benchmark::State& state) {
  const RangeDistParams prm{16, static_cast<double>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(qtukey(0.95, prm));
}
BENCHMARK(BM_QtukeyFinite)->Arg(30)->Arg(1007)->Unit(benchmark::kMillisecond);

static void BM_NullSimulation(benchmark::State& state) {
  SimSpec s;
  s.replications = state.range(0);
  s.rho_policy = state.range(1) ? RhoPolicy::estimated() : RhoPolicy::true_rho();
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(s, {1, false}).rejection_rate);
  state.SetItemsProcessed(state.iterations() * s.replications);
}
BENCHMARK(BM_NullSimulation)->Args({500, 0})->Args({500, 1})->Unit(benchmark::kMillisecond);

static void BM_SampleReturnsAr1(benchmark::State& state) {
  SimSpec s;
  s.corr_kind = CorrKind::Ar1;
  s.rho_policy = RhoPolicy::assumed(0.0);
  std::uint64_t r = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_returns(s, r++).values.data());
}
BENCHMARK(BM_SampleReturnsAr1)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
