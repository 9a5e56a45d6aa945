#include <benchmark/benchmark.h>

#include "kitaev/correlators.hpp"
#include "kitaev/spectrum.hpp"

namespace {

using namespace kitaev;

const Couplings kCritical = line_point(0.5);

void BM_TwoSiteZz(benchmark::State& state) {
  const LatticeSize l(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(two_site_zz(kCritical, l).value);
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_TwoSiteZz)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oN);

void BM_FourPointFast(benchmark::State& state) {
  const LatticeSize l(static_cast<int>(state.range(0)));
  const Displacement dr = longest_displacement(l);
  for (auto _ : state) benchmark::DoNotOptimize(two_bond_zzzz_fast(kCritical, l, dr).connected);
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_FourPointFast)->RangeMultiplier(2)->Range(8, 512)->Complexity(benchmark::oN);

void BM_FourPointNaive(benchmark::State& state) {
  const LatticeSize l(static_cast<int>(state.range(0)));
  const Displacement dr = longest_displacement(l);
  for (auto _ : state) benchmark::DoNotOptimize(two_bond_zzzz_naive(kCritical, l, dr).connected);
  state.SetComplexityN(state.range(0) * state.range(0) * state.range(0) * state.range(0));
}
BENCHMARK(BM_FourPointNaive)->RangeMultiplier(2)->Range(8, 32)->Complexity(benchmark::oN);

void BM_GroundEnergy(benchmark::State& state) {
  const LatticeSize l(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ground_energy(kCritical, l));
}
BENCHMARK(BM_GroundEnergy)->Arg(100)->Arg(1000);

void BM_EnergyGap(benchmark::State& state) {
  const LatticeSize l(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(energy_gap(kCritical, l));
}
BENCHMARK(BM_EnergyGap)->Arg(100)->Arg(1000);

}  // namespace
