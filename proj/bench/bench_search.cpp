// Parallel enumerator against its serial run and the brute-force oracle.
// Arguments: n, weight bound, point count.

#include <benchmark/benchmark.h>

#include "fixedpt/search.hpp"

using namespace fixedpt;

namespace {

SearchConfig config_from(const benchmark::State& state, int threads)
{
    SearchConfig c;
    c.n = static_cast<int>(state.range(0));
    c.weight_bound = state.range(1);
    c.point_count = static_cast<int>(state.range(2));
    c.require_effective = false;
    c.threads = threads;
    return c;
}

void BM_enumerate_parallel(benchmark::State& state)
{
    const auto c = config_from(state, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_systems(c));
    }
}

void BM_enumerate_serial(benchmark::State& state)
{
    const auto c = config_from(state, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_systems(c));
    }
}

void BM_naive_oracle(benchmark::State& state)
{
    const auto c = config_from(state, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(naive_oracle(c));
    }
}

void small_scopes(benchmark::internal::Benchmark* b)
{
    b->Args({1, 4, 2})->Args({2, 4, 3})->Args({2, 6, 3});
}

}  // namespace

BENCHMARK(BM_enumerate_parallel)->Apply(small_scopes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_serial)->Apply(small_scopes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_naive_oracle)->Apply(small_scopes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_parallel)->Args({4, 6, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_serial)->Args({4, 6, 3})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
