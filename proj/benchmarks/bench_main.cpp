#include <benchmark/benchmark.h>

#include <vector>

#include "ricker/bifurcate.hpp"
#include "ricker/lineig.hpp"
#include "ricker/semiconj.hpp"
#include "ricker/simulate.hpp"

namespace {

using namespace ricker;

void BM_IterateReduced(benchmark::State& state) {
  const ReducedParams rp{PeriodicSeq(4.5)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(iterate_reduced(2.25, 3.5, rp, static_cast<std::size_t>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IterateReduced)->Arg(1000)->Arg(100000);

void BM_DetectCycle(benchmark::State& state) {
  const MapConfig cfg{4.5, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(detect_cycle(cfg, 1.0));
}
BENCHMARK(BM_DetectCycle);

void BM_Eigensequence(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  std::vector<double> a(p), b(p);
  for (std::size_t k = 0; k < p; ++k) {
    a[k] = 0.2 + 0.1 * static_cast<double>(k % 3);
    b[k] = 0.3 + 0.05 * static_cast<double>(k % 5);
  }
  const LinearCoeffs lc{PeriodicSeq(a), PeriodicSeq(b)};
  for (auto _ : state) benchmark::DoNotOptimize(eigensequence(lc));
}
BENCHMARK(BM_Eigensequence)->Arg(2)->Arg(16)->Arg(64);

void BM_ScanRow(benchmark::State& state) {
  const ScanSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(scan_row(spec, 3.0));
}
BENCHMARK(BM_ScanRow);

void BM_RunScan(benchmark::State& state) {
  ScanSpec spec;
  spec.grid_n = 100;
  spec.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_scan(spec));
}
BENCHMARK(BM_RunScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
