// Serial reference vs OpenMP kernels for the O(n^2) pair scans.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "sphereflow/generators.hpp"
#include "sphereflow/kernels.hpp"

using namespace sphereflow;

namespace {

DiscreteCurve bench_curve(std::size_t n) {
  FourierSpec spec;
  spec.polar_angle = 1.2;
  spec.modes = {2, 3, 5};
  spec.amplitudes = {0.05, 0.03, 0.01};
  return make_fourier_perturbed(spec, n, 42);
}

template <class Kernel>
void run_kernel(benchmark::State& state, Kernel kernel) {
  const auto curve = bench_curve(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel(curve));
  const auto n = static_cast<double>(state.range(0));
  state.counters["pairs/s"] =
      benchmark::Counter(n * (n - 1) / 2, benchmark::Counter::kIsIterationInvariantRate);
}

void BM_min_z_serial(benchmark::State& s) { run_kernel(s, [](const auto& c) { return kernels::min_z_serial(c, 1.5); }); }
void BM_min_z_parallel(benchmark::State& s) { run_kernel(s, [](const auto& c) { return kernels::min_z_parallel(c, 1.5); }); }
void BM_binned_serial(benchmark::State& s) {
  run_kernel(s, [](const auto& c) { return kernels::binned_min_chord_serial(c, 256); });
}
void BM_binned_parallel(benchmark::State& s) {
  run_kernel(s, [](const auto& c) { return kernels::binned_min_chord_parallel(c, 256); });
}
void BM_crossing_serial(benchmark::State& s) { run_kernel(s, [](const auto& c) { return kernels::first_crossing_serial(c); }); }
void BM_crossing_parallel(benchmark::State& s) { run_kernel(s, [](const auto& c) { return kernels::first_crossing_parallel(c); }); }

}  // namespace

BENCHMARK(BM_min_z_serial)->RangeMultiplier(2)->Range(256, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_min_z_parallel)->RangeMultiplier(2)->Range(256, 4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_binned_serial)->RangeMultiplier(2)->Range(256, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_binned_parallel)->RangeMultiplier(2)->Range(256, 4096)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_crossing_serial)->RangeMultiplier(2)->Range(256, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_crossing_parallel)->RangeMultiplier(2)->Range(256, 4096)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
