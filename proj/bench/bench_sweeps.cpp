#include <benchmark/benchmark.h>

#include "solitonlab/catalog/catalog.hpp"
#include "solitonlab/sweeps.hpp"

using namespace solitonlab;

namespace {

sweep::Mode mode_of(const benchmark::State& st) {
  return st.range(0) == 0 ? sweep::Mode::serial : sweep::Mode::parallel;
}

void label(benchmark::State& st) {
  st.SetLabel(st.range(0) == 0 ? "serial" : "omp x" + std::to_string(sweep::max_threads()));
}

void BM_residual_bryant(benchmark::State& st) {
  const auto s = catalog::make_soliton("bryant_steady_3");
  const auto pts = catalog::sample_points(s, 64, 1);
  for (auto _ : st) benchmark::DoNotOptimize(sweep::residual_sweep(s, pts, mode_of(st)));
  label(st);
}

void BM_weitzenbock_cylinder(benchmark::State& st) {
  const auto s = catalog::make_soliton("cigar_cylinder_4");
  const auto pts = catalog::sample_points(s, 32, 1);
  for (auto _ : st) benchmark::DoNotOptimize(sweep::weitzenbock_sweep(s, pts, mode_of(st)));
  label(st);
}

void BM_systems_n5(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sweep::system_sweep(5, 20000, 7, mode_of(st)));
  label(st);
}

void BM_triples(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(sweep::triple_sweep(100000, 7, mode_of(st)));
  label(st);
}

}  // namespace

BENCHMARK(BM_residual_bryant)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_weitzenbock_cylinder)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_systems_n5)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_triples)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
