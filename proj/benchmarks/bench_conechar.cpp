#include <benchmark/benchmark.h>

#include <toriheights/conechar.hpp>

#include <vector>

using namespace toriheights;

namespace {

// cross-polytope style cone over the cube: 2^(d-1) generators at height 1,
// the worst case for the recursive triangulation
PolyhedralCone cube_cone(int d) {
    std::vector<IntVec> gens;
    const int corners = 1 << (d - 1);
    for (int mask = 0; mask < corners; ++mask) {
        IntVec g;
        for (int i = 0; i < d - 1; ++i) g.emplace_back((mask >> i) & 1 ? 1 : -1);
        g.emplace_back(1);
        gens.push_back(std::move(g));
    }
    return make_cone(d, gens);
}

}  // namespace

static void BM_MakeCone(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        PolyhedralCone c = cube_cone(d);
        benchmark::DoNotOptimize(c.facets);
    }
}
BENCHMARK(BM_MakeCone)->Arg(3)->Arg(4)->Arg(5);

static void BM_CharFunction(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    PolyhedralCone c = cube_cone(d);
    for (auto _ : state) {
        SimplicialTermSum x = char_function(c);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_CharFunction)->Arg(3)->Arg(4)->Arg(5);

static void BM_EvalChar(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    PolyhedralCone c = cube_cone(d);
    SimplicialTermSum x = char_function(c);
    RatVec u(static_cast<size_t>(d), Rat(0));
    u[static_cast<size_t>(d - 1)] = Rat(3);
    u[0] = Rat(1, 2);
    for (auto _ : state) {
        Rat v = eval_char(x, u);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_EvalChar)->Arg(3)->Arg(4)->Arg(5);

BENCHMARK_MAIN();
