#include <benchmark/benchmark.h>

#include "dropletlab/asymptotics.hpp"
#include "dropletlab/integrals.hpp"
#include "dropletlab/interaction.hpp"
#include "dropletlab/optimizer.hpp"
#include "dropletlab/rng.hpp"

using namespace dropletlab;

namespace {

struct Instance {
    ModelParams params{3, 2.0, 1.0, 0.0, 1.0};
    MassPartition masses;
    PointConfiguration config;
};

Instance make_instance(int n) {
    Instance inst;
    RngStream stream(17, "bench/instance");
    inst.masses.masses.assign(static_cast<std::size_t>(n) + 1, 1.0);
    inst.params.M = inst.masses.total();
    inst.config.dim = 3;
    for (int i = 0; i < n; ++i) {
        const auto dir = stream.uniform_direction(3);
        const double r = 4.0 * (1.0 + 0.3 * i);
        for (double c : dir) inst.config.coords.push_back(r * c);
    }
    return inst;
}

} // namespace

static void BM_InteractionEnergy(benchmark::State& state) {
    const Instance inst = make_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(interaction_energy(inst.masses, inst.config, inst.params));
    }
}
BENCHMARK(BM_InteractionEnergy)->Arg(2)->Arg(5)->Arg(16)->Arg(64);

static void BM_InteractionGradient(benchmark::State& state) {
    const Instance inst = make_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(interaction_gradient(inst.masses, inst.config, inst.params));
    }
}
BENCHMARK(BM_InteractionGradient)->Arg(2)->Arg(5)->Arg(16)->Arg(64);

static void BM_RieszSelfEnergy(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(riesz_unit_ball_self_energy(3, 2.0, 1e-8));
    }
}
BENCHMARK(BM_RieszSelfEnergy);

static void BM_RieszCrossEnergy(benchmark::State& state) {
    const ModelParams params{3, 2.0, 1.0, 0.0, 1.0};
    const BallDroplet a{{0.0, 0.0, 0.0}, 1.0};
    const BallDroplet b{{8.0, 0.0, 0.0}, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(riesz_cross_energy(a, b, params));
    }
}
BENCHMARK(BM_RieszCrossEnergy);

static void BM_ConfinementShell(benchmark::State& state) {
    const ModelParams params{3, 2.0, 1.0, 0.0, 1.0};
    const BallDroplet b{{2.5, 0.0, 0.0}, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(confinement_integral(b, params));
    }
}
BENCHMARK(BM_ConfinementShell);

static void BM_MinimizeTwoBody(benchmark::State& state) {
    const ModelParams params{3, 2.0, 1.0, 0.0, 2.0};
    const MassPartition masses{{1.0, 1.0}};
    OptimizerOptions opts;
    opts.starts = 4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(minimize_configuration(masses, params, opts));
    }
}
BENCHMARK(BM_MinimizeTwoBody);

BENCHMARK_MAIN();
