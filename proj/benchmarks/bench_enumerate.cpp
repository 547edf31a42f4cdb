#include <benchmark/benchmark.h>

#include <toriheights/enumerate.hpp>
#include <toriheights/fan.hpp>
#include <toriheights/heightzeta.hpp>

using namespace toriheights;

static void BM_ConicFastCounts(benchmark::State& state) {
    PointFamily family = PointFamily::conic(Int(-4));
    std::vector<double> bounds{static_cast<double>(state.range(0))};
    for (auto _ : state) {
        CountSeries s = enumerate_counts(family, bounds);
        benchmark::DoNotOptimize(s.counts);
    }
}
BENCHMARK(BM_ConicFastCounts)->Arg(100000)->Arg(1000000);

static void BM_ConicNaiveCounts(benchmark::State& state) {
    PointFamily family = PointFamily::conic(Int(-4));
    std::vector<double> bounds{static_cast<double>(state.range(0))};
    for (auto _ : state) {
        CountSeries s = enumerate_counts_naive(family, bounds);
        benchmark::DoNotOptimize(s.counts);
    }
}
BENCHMARK(BM_ConicNaiveCounts)->Arg(500)->Arg(2000);

static void BM_ProjectivePlaneCounts(benchmark::State& state) {
    PointFamily family = PointFamily::projective(2);
    std::vector<double> bounds{static_cast<double>(state.range(0))};
    for (auto _ : state) {
        CountSeries s = enumerate_counts(family, bounds);
        benchmark::DoNotOptimize(s.counts);
    }
}
BENCHMARK(BM_ProjectivePlaneCounts)->Arg(1000)->Arg(10000);

static void BM_TruncatedGlobalProduct(benchmark::State& state) {
    Fan line = projective_space_fan(1);
    PLFunction phi{{Rat(2), Rat(3)}};
    SplittingRule split = SplittingRule::all_split(1);
    const long prime_bound = state.range(0);
    for (auto _ : state) {
        double p = truncated_global_product(line, split, phi, prime_bound);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_TruncatedGlobalProduct)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
