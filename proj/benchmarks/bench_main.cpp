#include <benchmark/benchmark.h>

#include "piston/exact_solver.hpp"
#include "piston/fvm_validator.hpp"
#include "piston/weak_verify.hpp"

using namespace piston;

static void BM_SolveShock(benchmark::State& state) {
    const PistonScenario sc(0.5, 0.8, Direction::Advance);
    for (auto _ : state) benchmark::DoNotOptimize(solve_shock(sc));
}
BENCHMARK(BM_SolveShock);

static void BM_FvmStep(benchmark::State& state) {
    const PistonScenario sc(0.5, 0.8, Direction::Advance);
    const GasModel g = sc.gas();
    FvmState st = initial_fvm_state(sc, Grid1D(-1.0, static_cast<int>(state.range(0))), 0.45);
    for (auto _ : state) {
        st = step(st, g);
        benchmark::DoNotOptimize(st.rho.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FvmStep)->Arg(400)->Arg(3200);

static void BM_WeakResidual(benchmark::State& state) {
    const SelfSimilarSolution sol = solve(PistonScenario(0.5, 1.0, Direction::Recede));
    const auto family = make_test_family(1, 7);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(integral_weak_residual(sol, family[0], n));
}
BENCHMARK(BM_WeakResidual)->Arg(128)->Arg(512);

BENCHMARK_MAIN();
