#include <benchmark/benchmark.h>

#include "locdet/complex.hpp"
#include "locdet/constructions.hpp"
#include "locdet/functionals.hpp"
#include "locdet/geometry.hpp"
#include "locdet/ld_solver.hpp"

using namespace locdet;

static void BM_join(benchmark::State& state) {
    const Complex K = cycle_complex(static_cast<int>(state.range(0)));
    const Complex L = cycle_complex(static_cast<int>(state.range(0)) + 1);
    for (auto _ : state) benchmark::DoNotOptimize(join(K, L));
}
BENCHMARK(BM_join)->Arg(4)->Arg(8)->Arg(16);

static void BM_t_complex(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(t_complex({p - 1, 1, 4, 5}));
}
BENCHMARK(BM_t_complex)->Arg(2)->Arg(3);

static void BM_canonical_key(benchmark::State& state) {
    const Complex K = t_complex({1, 1, 4, 5});
    for (auto _ : state) benchmark::DoNotOptimize(canonical_key(K));
}
BENCHMARK(BM_canonical_key);

static void BM_link_classes(benchmark::State& state) {
    const auto family = counterexample_family(2, 4, 5);
    const LinearFunctional cd = charney_davis_functional(3);
    for (auto _ : state) benchmark::DoNotOptimize(build_system(family, cd));
}
BENCHMARK(BM_link_classes);

static void BM_solve_demo(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(demo_charney_davis(2, 4, 5));
}
BENCHMARK(BM_solve_demo);

static void BM_identity_suite(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(identity_suite(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_identity_suite)->Arg(2)->Arg(3);

static void BM_geometric_demo(benchmark::State& state) {
    const LinearFunctional cd = charney_davis_functional(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(geometric_ld_demo(2, 4, 5, cd));
}
BENCHMARK(BM_geometric_demo);

BENCHMARK_MAIN();
