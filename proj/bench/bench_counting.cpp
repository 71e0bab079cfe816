// Parallel rank-trick kernels against their serial references.
#include "multirank/counting.hpp"
#include "multirank/parallel.hpp"

#include <benchmark/benchmark.h>

using namespace multirank;

namespace {

void BM_CountSF(benchmark::State& state) {
  const auto f = random_form(Field::make(3, 1), 3, 3, 1);
  const auto level = static_cast<unsigned>(state.range(0));
  parallel::ThreadScope scope(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(count_sf(f, level));
}

void BM_CountSFSerial(benchmark::State& state) {
  const auto f = random_form(Field::make(3, 1), 3, 3, 1);
  const auto level = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_sf_serial(f, level));
}

void BM_CountBox(benchmark::State& state) {
  const auto g = random_int_form(3, 2, 3, 1);
  parallel::ThreadScope scope(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(count_box(g, BoxSpec{state.range(0), true, 0}));
}

void BM_CountBoxSerial(benchmark::State& state) {
  const auto g = random_int_form(3, 2, 3, 1);
  for (auto _ : state) benchmark::DoNotOptimize(count_box_serial(g, BoxSpec{state.range(0), true, 0}));
}

}  // namespace

BENCHMARK(BM_CountSF)->ArgsProduct({{2, 3}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountSFSerial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountBox)->ArgsProduct({{8, 16}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountBoxSerial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
