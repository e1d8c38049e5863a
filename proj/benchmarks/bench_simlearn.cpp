// SPDX-License-Identifier: Apache-2.0
#include "simlearn/simlearn.hpp"

#include <benchmark/benchmark.h>

using namespace simlearn;

namespace {

Scenario grid_scenario(int side)
{
    Scenario sc;
    sc.geometry.nx = side;
    sc.geometry.ny = side;
    sc.training.tolerance = 0.0;
    return sc;
}

// One Gauss-Seidel episode over all layers; N = side^2.
void BM_TrainingEpisode(benchmark::State& state)
{
    const int side = static_cast<int>(state.range(0));
    const Scenario sc = grid_scenario(side);
    const Realization rz = prepare_realization(sc, 0);
    const CMatrix pilots = gen_frame(sc.users.count, sc.training.pilots, 1).symbols;
    TrainConfig cfg = sc.training;
    cfg.episodes = 1;
    for (auto _ : state) {
        TrainResult r = train(rz.channels, pilots, cfg, rz.initial, rz.assignment);
        benchmark::DoNotOptimize(r.phases);
    }
    state.counters["N"] = side * side;
    state.SetComplexityN(side * side);
}
BENCHMARK(BM_TrainingEpisode)->Arg(4)->Arg(8)->Arg(12)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond)->Complexity();

void BM_LayerGradient(benchmark::State& state)
{
    const int side = static_cast<int>(state.range(0));
    const Scenario sc = grid_scenario(side);
    const Realization rz = prepare_realization(sc, 0);
    const CMatrix pilots = gen_frame(sc.users.count, sc.training.pilots, 1).symbols;
    for (auto _ : state) benchmark::DoNotOptimize(layer_gradient(rz.channels, rz.initial, pilots, {}, rz.assignment, 1));
    state.SetComplexityN(side * side);
}
BENCHMARK(BM_LayerGradient)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond)->Complexity();

// Inter-layer propagation of a K-column block: FFT convolution vs dense product.
void BM_InterLayerApply(benchmark::State& state)
{
    const int side = static_cast<int>(state.range(0));
    const bool dense = state.range(1) != 0;
    GeometryParams gp;
    gp.nx = side;
    gp.ny = side;
    const SimGeometry geom = build_geometry(gp);
    const GridOperator op(inter_layer_matrix(geom, 2), side, side);
    const CMatrix x = awgn(geom.atoms(), 4, 1.0, 2);
    for (auto _ : state) {
        if (dense) benchmark::DoNotOptimize(CMatrix(op.dense() * x));
        else benchmark::DoNotOptimize(op.apply(x));
    }
    state.SetLabel(dense ? "dense" : (op.fast() ? "fft" : "dense-fallback"));
}
BENCHMARK(BM_InterLayerApply)->ArgsProduct({{8, 16, 32}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_ChannelSynthesis(benchmark::State& state)
{
    const Scenario sc = grid_scenario(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(prepare_realization(sc, 0));
}
BENCHMARK(BM_ChannelSynthesis)->Arg(8)->Arg(10)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Evaluation(benchmark::State& state)
{
    Scenario sc = grid_scenario(8);
    sc.training.episodes = 0;
    sc.evaluation.realizations = 1;
    sc.evaluation.payload_slots = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_multiuser(sc));
}
BENCHMARK(BM_Evaluation)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
