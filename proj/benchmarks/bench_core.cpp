#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "covertaoi/channel.hpp"
#include "covertaoi/detection.hpp"
#include "covertaoi/rng.hpp"
#include "covertaoi/simulation.hpp"
#include "covertaoi/solver.hpp"

using namespace covertaoi;

namespace {

void BM_optimal_detection(benchmark::State& state) {
    const NoiseUncertainty nu{1e-12, 1.9952623149688795};
    double pa = 1e-9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimal_detection(pa, 1e-6, nu));
        pa = pa < 1e-7 ? pa * 1.0001 : 1e-9;
    }
}
BENCHMARK(BM_optimal_detection);

void BM_covert_power_cap(benchmark::State& state) {
    const NoiseUncertainty nu{1e-12, 1.9952623149688795};
    for (auto _ : state) benchmark::DoNotOptimize(covert_power_cap(1e-6, nu, 0.95));
}
BENCHMARK(BM_covert_power_cap);

void BM_alternating_solve(benchmark::State& state) {
    const int K = static_cast<int>(state.range(0));
    ScenarioConfig cfg;
    cfg.num_users = K;
    cfg.power_budget_w = 1e-6;
    Rng rng(42);
    std::vector<double> gains;
    for (int k = 0; k < K; ++k) gains.push_back(std::pow(10.0, rng.uniform(-9.5, -7.5)));
    const double h_aw = 1e-9;
    for (auto _ : state) benchmark::DoNotOptimize(alternating_solve(gains, h_aw, cfg));
}
BENCHMARK(BM_alternating_solve)->Arg(2)->Arg(3)->Arg(6);

void BM_run_slotted_aware(benchmark::State& state) {
    ScenarioConfig cfg;
    cfg.power_budget_w = 1e-6;
    Topology topo;
    topo.user_distances_m = {25.0, 50.0, 75.0};
    topo.willie_distance_m = 50.0;
    for (auto _ : state) {
        Rng rng(7);
        benchmark::DoNotOptimize(run_slotted(cfg, topo, PolicyKind::AocAware, 20, rng));
    }
}
BENCHMARK(BM_run_slotted_aware);

}  // namespace

BENCHMARK_MAIN();
