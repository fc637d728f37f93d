// OpenMP kernels vs the serial reference loops.

#include <benchmark/benchmark.h>

#include <vector>

#include "dcc/engine.hpp"
#include "dcc/kernels.hpp"

using namespace dcc;

namespace {

std::vector<StationState> stations(std::size_t n) {
  std::vector<StationState> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = {0.0006 + 0.02 * double(i % 97) / 97.0, 0.6, true};
  return s;
}

template <auto Fn>
void bm_moments(benchmark::State& state) {
  const auto s = stations(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void bm_observe(benchmark::State& state) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  std::uint64_t tick = 0;
  for (auto _ : state) {
    Fn(out, 0.7, 0.05, 42, 0, tick++);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Fn>
void bm_step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto s = stations(n);
  const std::vector<double> newest(n, 0.66), older(n, 0.71);
  const DccParams p;
  const Variant v = DualAlpha{};
  for (auto _ : state) {
    Fn(s, newest, older, p, v);
    benchmark::DoNotOptimize(s.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_run(benchmark::State& state, Execution exec) {
  const std::vector<StationGroup> g{{static_cast<std::size_t>(state.range(0)), 0.0006, 0.0}};
  RunOptions o;
  o.noise_amplitude = 0.02;
  o.execution = exec;
  for (auto _ : state) benchmark::DoNotOptimize(run(g, {}, DualAlpha{}, 10.0, o));
}

}  // namespace

#define SIZES RangeMultiplier(10)->Range(10'000, 1'000'000)

BENCHMARK(bm_moments<&kernels::delta_moments>)->SIZES->UseRealTime();
BENCHMARK(bm_moments<&reference::delta_moments>)->SIZES;
BENCHMARK(bm_observe<&kernels::observe>)->SIZES->UseRealTime();
BENCHMARK(bm_observe<&reference::observe>)->SIZES;
BENCHMARK(bm_step<&kernels::step_stations>)->SIZES->UseRealTime();
BENCHMARK(bm_step<&reference::step_stations>)->SIZES;
BENCHMARK_CAPTURE(bm_run, parallel, Execution::Parallel)->Arg(100'000)->UseRealTime()
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_run, serial, Execution::Serial)->Arg(100'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
