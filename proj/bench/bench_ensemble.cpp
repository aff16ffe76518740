#include "regnet/attractor.hpp"
#include "regnet/ensembles.hpp"
#include "regnet/harness.hpp"

#include <benchmark/benchmark.h>

using namespace regnet;

namespace {

EnsembleSpec bench_spec() {
    EnsembleSpec s;
    s.models = {GraphModel{GraphModel::Kind::erdos_renyi, 0.2}};
    s.n_vertices = 40;
    s.a_grid = {0.0, 0.3, 0.6};
    s.eta_grid = {0.2, 0.5, 0.8};
    s.graphs_per_cell = 4;
    s.orbits_per_graph = 5;
    s.root_seed = 1;
    return s;
}

void BM_EnsembleSerial(benchmark::State& state) {
    const auto spec = bench_spec();
    for (auto _ : state) benchmark::DoNotOptimize(run_ensemble_serial(spec));
}
BENCHMARK(BM_EnsembleSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_EnsembleParallel(benchmark::State& state) {
    const auto spec = bench_spec();
    for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(spec, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnsembleParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

// Arrow updates per second of the step kernel (n = 100, |A| ~ 2000).
void BM_StepKernel(benchmark::State& state) {
    Rng r(3);
    Digraph g = sample_erdos_renyi(100, 0.2, false, r);
    const auto m = g.arrow_count();
    const RegulatoryNetwork net(std::move(g), sample_signs(m, 0.5, r), sample_thresholds(m, r), 0.5);
    ActivityVector x = sample_initial(100, r), y(100);
    for (auto _ : state) {
        net.step_into(x, y);
        std::swap(x, y);
        benchmark::ClobberMemory();
    }
    state.counters["arrow_updates/s"] =
        benchmark::Counter(static_cast<double>(state.iterations() * m), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_StepKernel);

}  // namespace

BENCHMARK_MAIN();
