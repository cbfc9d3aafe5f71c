#include <benchmark/benchmark.h>

#include "sln/homology.hpp"
#include "sln/klr.hpp"
#include "sln/pipeline.hpp"
#include "sln/rep.hpp"

using namespace sln;

static void BM_QBinomial(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        for (int k = 0; k <= n; ++k) benchmark::DoNotOptimize(qbinom(n, k));
}
BENCHMARK(BM_QBinomial)->Arg(8)->Arg(16)->Arg(32);

static void BM_WebEvaluation(benchmark::State& state) {
    LadderWeb w(GlWeight{3, {0, 0, 3}}, {F(2), F(1), E(1), E(2)});
    for (auto _ : state) benchmark::DoNotOptimize(eval_closed_web(w));
}
BENCHMARK(BM_WebEvaluation);

static void BM_ClosedDiagram(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    KLRWord d;
    d.weight = GlWeight{n, {n, 0}};
    d.slices = {KLRSlice::cup(0, Orient::EF, 1, 1), KLRSlice::dot(0, n - 1), KLRSlice::cap(0)};
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_closed(d));
}
BENCHMARK(BM_ClosedDiagram)->DenseRange(2, 4);

static void BM_DecomposeSquare(benchmark::State& state) {
    LadderWeb w(GlWeight{3, {0, 0, 3}}, {F(2), F(1), E(1), E(2)});
    for (auto _ : state) benchmark::DoNotOptimize(decompose_web(w).size());
}
BENCHMARK(BM_DecomposeSquare)->Unit(benchmark::kMillisecond);

static void BM_Pipeline(benchmark::State& state) {
    const char* braids[] = {"1 1", "1 1 1", "1 -2 1 -2"};
    auto d = TangleDiagram::parse_braid(braids[state.range(1)]);
    PipelineOptions o;
    o.n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(d, o).generators);
}
BENCHMARK(BM_Pipeline)->Args({2, 0})->Args({2, 1})->Args({2, 2})->Args({3, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
