#include <benchmark/benchmark.h>

#include <toriheights/counting.hpp>
#include <toriheights/fan.hpp>
#include <toriheights/galois.hpp>
#include <toriheights/sr_ring.hpp>

using namespace toriheights;

namespace {

Fan hexagon() {
    return build_and_validate(2,
                              {{Int(1), Int(0)},
                               {Int(1), Int(1)},
                               {Int(0), Int(1)},
                               {Int(-1), Int(0)},
                               {Int(-1), Int(-1)},
                               {Int(0), Int(-1)}},
                              {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
}

}  // namespace

static void BM_CountToricProjective(benchmark::State& state) {
    Fan fan = projective_space_fan(static_cast<int>(state.range(0)));
    FrobeniusDatum frob{IntMatrix::identity(state.range(0)), Int(9973)};
    for (auto _ : state) {
        Int n = count_toric(fan, frob);
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_CountToricProjective)->Arg(1)->Arg(2)->Arg(3);

static void BM_CountToricHexagon(benchmark::State& state) {
    Fan fan = hexagon();
    FrobeniusDatum frob{IntMatrix::identity(2), Int(9973)};
    for (auto _ : state) {
        Int n = count_toric(fan, frob);
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_CountToricHexagon);

static void BM_ChowTracePolynomial(benchmark::State& state) {
    Fan fan = hexagon();
    IntMatrix rot(2, 2);
    rot.at(0, 1) = -1;
    rot.at(1, 0) = 1;
    rot.at(1, 1) = -1;
    for (auto _ : state) {
        auto coeffs = chow_trace_polynomial(fan, rot);
        benchmark::DoNotOptimize(coeffs);
    }
}
BENCHMARK(BM_ChowTracePolynomial);

static void BM_QPolynomialHexagon(benchmark::State& state) {
    Fan fan = hexagon();
    IntMatrix id = IntMatrix::identity(2);
    GaloisAction trivial = close_and_verify(fan, {});
    OrbitPartition orbits = ray_orbits(trivial);
    for (auto _ : state) {
        MultigradedPolynomial q = q_polynomial(fan, id, orbits);
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(BM_QPolynomialHexagon);

BENCHMARK_MAIN();
