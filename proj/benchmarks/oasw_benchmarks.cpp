// Microbenchmarks for the hot paths: tree training, prediction, the
// engine's per-sample step, and the detector/window primitives it leans on.
// Build with -DOASW_BUILD_BENCHMARKS=ON (needs google-benchmark) and run
// build/benchmarks/oasw_benchmarks.

#include <memory>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "oasw/detectors.hpp"
#include "oasw/engine.hpp"
#include "oasw/gbdt.hpp"
#include "oasw/synthetic.hpp"

namespace {

oasw::StreamSource drift_stream(std::size_t length) {
    oasw::SyntheticDriftSpec spec;
    spec.kind = oasw::DriftKind::Sudden;
    spec.change_points = {length / 2};
    spec.noise_rate = 0.05;
    spec.seed = 17;
    return oasw::generate_synthetic(spec, length);
}

oasw::ClassifierParams bench_params(int n_estimators) {
    oasw::ClassifierParams params;
    params.n_estimators = n_estimators;
    params.max_depth = 6;
    params.num_leaves = 31;
    params.min_data_in_leaf = 20;
    params.learning_rate = 0.1;
    params.seed = 17;
    return params;
}

void BM_GbdtFit(benchmark::State& state) {
    const auto stream = drift_stream(2000);
    const auto train = stream.samples().subspan(0, 1000);
    const auto params = bench_params(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(oasw::fit_gbdt(train, params));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(train.size()));
}
BENCHMARK(BM_GbdtFit)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_GbdtPredict(benchmark::State& state) {
    const auto stream = drift_stream(2000);
    const auto model = oasw::fit_gbdt(stream.samples().subspan(0, 1000), bench_params(100));
    std::size_t i = 1000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(model.predict(stream.samples()[i].features));
        if (++i == 2000) i = 1000;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GbdtPredict);

void BM_EngineStep(benchmark::State& state) {
    const auto stream = drift_stream(200000);
    const auto params = bench_params(20);
    const auto model = std::make_shared<const oasw::GbdtModel>(
        oasw::fit_gbdt(stream.samples().subspan(0, 1000), params));
    const auto trainer = std::make_shared<const oasw::GbdtTrainer>(params);

    oasw::OaswParams oasw_params;
    oasw_params.t = 300;
    oasw_params.t_prime_max = 1000;
    oasw::OaswEngine engine(model, trainer, oasw_params);

    std::size_t i = 0;
    for (auto _ : state) {
        const auto& sample = stream.samples()[i];
        const int predicted = engine.predict(sample.features);
        benchmark::DoNotOptimize(engine.observe(sample, predicted));
        if (++i == stream.size()) i = 0;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EngineStep);

void BM_AdwinUpdate(benchmark::State& state) {
    oasw::AdwinDetector adwin;
    std::mt19937_64 rng(3);
    std::bernoulli_distribution coin(0.9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(adwin.update(coin(rng) ? 1.0 : 0.0));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AdwinUpdate);

void BM_WindowAccuracy(benchmark::State& state) {
    const std::size_t t = static_cast<std::size_t>(state.range(0));
    oasw::CorrectnessRing ring(2 * t);
    std::mt19937_64 rng(4);
    std::bernoulli_distribution coin(0.9);
    std::size_t index = 0;
    for (std::size_t k = 0; k < 2 * t; ++k) ring.push(coin(rng)), ++index;
    for (auto _ : state) {
        ring.push(coin(rng));
        ++index;
        benchmark::DoNotOptimize(ring.window_accuracy(index - 1, t));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WindowAccuracy)->Arg(300)->Arg(1000);

} // namespace

BENCHMARK_MAIN();
