#include <benchmark/benchmark.h>

#include "pipegate/bounds.hpp"
#include "pipegate/catalog.hpp"
#include "pipegate/metrics.hpp"

using namespace pipegate;

static void BM_InvertDetectorPrecision(benchmark::State& state) {
    double p = 0.87;
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::invert_detector_precision(p, 0.84, 0.05));
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_InvertDetectorPrecision);

static void BM_Evaluate(benchmark::State& state) {
    bounds::PipelineConfig c;
    c.prevalence = 0.38;
    c.n = 1e5;
    c.validator.precision = 1.0;
    c.validator.recall = 1.0;
    c.validator.latency = 337.83;
    c.screener.precision = 0.9371273712737127;
    c.screener.recall = 0.95;
    c.screener.latency = 156.0;
    for (auto _ : state) benchmark::DoNotOptimize(bounds::evaluate(c, 0.06));
}
BENCHMARK(BM_Evaluate);

static void BM_LimitsGrid(benchmark::State& state) {
    const auto cat = catalog::builtin_catalog();
    const auto bench = catalog::builtin_benchmark();
    for (auto _ : state) {
        double sum = 0.0;
        for (const auto& m : cat.models()) {
            const auto rates = m.screener_rates();
            for (double tau_v : {bench.times.q25, bench.times.median, bench.times.q75, bench.times.mean}) {
                sum += bounds::max_model_time(tau_v, rates.tpr, m.screener_precision(), bench.prevalence).relaxed;
            }
        }
        benchmark::DoNotOptimize(sum);
    }
}
BENCHMARK(BM_LimitsGrid);

static void BM_BuiltinCatalog(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(catalog::builtin_catalog());
}
BENCHMARK(BM_BuiltinCatalog);
