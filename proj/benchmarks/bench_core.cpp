#include <benchmark/benchmark.h>

#include "tlo/evaluation.hpp"
#include "tlo/generator.hpp"
#include "tlo/qubo.hpp"
#include "tlo/rng.hpp"
#include "tlo/sa_solver.hpp"

namespace {

using namespace tlo;

// Row-3 shape; the plan is whatever a short annealing run settles on.
struct Fixture {
    Instance instance = generate_instance({20, 8, 4, 19, 28, 7});
    Solution plan = [this] {
        SaParams p;
        p.t_final = 1.0;
        return solve(instance, p).best_solution;
    }();
};

const Fixture& fixture() {
    static const Fixture f;
    return f;
}

void BM_CompactRehandles(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(count_rehandles_compact(f.instance, f.plan));
}
BENCHMARK(BM_CompactRehandles);

void BM_SimulatedRehandles(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(simulate_loading(f.instance, f.plan).rehandles);
}
BENCHMARK(BM_SimulatedRehandles);

void BM_Feasibility(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(is_feasible(f.instance, f.plan));
}
BENCHMARK(BM_Feasibility);

void BM_GenerateNeighbor(benchmark::State& state) {
    const auto& f = fixture();
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(generate_neighbor(f.instance, f.plan, rng, 50));
}
BENCHMARK(BM_GenerateNeighbor);

void BM_SolveDefaults(benchmark::State& state) {
    const auto& f = fixture();
    SaParams p;
    for (auto _ : state) benchmark::DoNotOptimize(solve(f.instance, p).best_report.objective_shifted);
}
BENCHMARK(BM_SolveDefaults)->Unit(benchmark::kMillisecond);

void BM_BuildQubo(benchmark::State& state) {
    const auto& f = fixture();
    for (auto _ : state) benchmark::DoNotOptimize(build_qubo(f.instance).model.n);
}
BENCHMARK(BM_BuildQubo)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
