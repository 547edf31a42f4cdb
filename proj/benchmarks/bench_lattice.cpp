#include <benchmark/benchmark.h>

#include <toriheights/lattice.hpp>

#include <random>

using namespace toriheights;

namespace {

// deterministic matrix with entries in [-9, 9]; dense enough that the Smith
// reduction performs real pivoting work
IntMatrix dense_matrix(long rows, long cols, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> entry(-9, 9);
    IntMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) m.at(i, j) = entry(rng);
    return m;
}

}  // namespace

static void BM_SmithNormalForm(benchmark::State& state) {
    const long n = state.range(0);
    IntMatrix m = dense_matrix(n, n, 7u);
    for (auto _ : state) {
        SmithForm s = smith_normal_form(m);
        benchmark::DoNotOptimize(s.s);
    }
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_Determinant(benchmark::State& state) {
    const long n = state.range(0);
    IntMatrix m = dense_matrix(n, n, 11u);
    for (auto _ : state) {
        Int d = determinant(m);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_Determinant)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_IntegerKernel(benchmark::State& state) {
    const long n = state.range(0);
    // rank-deficient by construction: last row is a sum of the others
    IntMatrix m = dense_matrix(n, n, 13u);
    for (long j = 0; j < n; ++j) {
        Int acc = 0;
        for (long i = 0; i + 1 < n; ++i) acc += m.at(i, j);
        m.at(n - 1, j) = acc;
    }
    for (auto _ : state) {
        auto k = integer_kernel(m);
        benchmark::DoNotOptimize(k);
    }
}
BENCHMARK(BM_IntegerKernel)->Arg(8)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
