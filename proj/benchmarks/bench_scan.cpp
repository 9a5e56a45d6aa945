#include <benchmark/benchmark.h>

#include "kitaev/ed_oracle.hpp"
#include "kitaev/scan.hpp"

namespace {

using namespace kitaev;

void BM_ScanDerivative(benchmark::State& state) {
  ScanConfig cfg;
  cfg.l = LatticeSize(static_cast<int>(state.range(0)));
  const Exec exec{static_cast<unsigned>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(scan_quantity(Quantity::Dmi2, cfg, exec));
}
BENCHMARK(BM_ScanDerivative)->Args({100, 1})->Args({100, 4})->Unit(benchmark::kMillisecond);

void BM_ScanTwoBond(benchmark::State& state) {
  ScanConfig cfg;
  cfg.l = LatticeSize(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scan_two_bond_mi(cfg));
}
BENCHMARK(BM_ScanTwoBond)->Arg(24)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_PhaseDiagram(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(phase_diagram_raster(40, LatticeSize(100)));
}
BENCHMARK(BM_PhaseDiagram)->Unit(benchmark::kMillisecond);

void BM_ClusterGroundState(benchmark::State& state) {
  const auto h = ed::build_h8(Couplings(0.25, 0.25, 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(ed::ground_state(h).energy);
}
BENCHMARK(BM_ClusterGroundState)->Unit(benchmark::kMillisecond);

}  // namespace
