#include <benchmark/benchmark.h>

#include "pipegate/simulate.hpp"

using namespace pipegate;

namespace {

simulate::SimConfig config(std::uint64_t n, std::uint32_t trials) {
    simulate::SimConfig c;
    c.prevalence = 0.38;
    c.n = n;
    c.extra = n * 6 / 100;
    c.screener = {0.95, 0.16};
    c.screener_latency = 156.0;
    c.validator_latency = 600.0;
    c.trials = trials;
    c.seed = 42;
    c.precision_mode = simulate::PrecisionMode::PrevalenceConsistent;
    return c;
}

}  // namespace

static void BM_RunAugmented(benchmark::State& state) {
    const auto c = config(static_cast<std::uint64_t>(state.range(0)), 10);
    for (auto _ : state) benchmark::DoNotOptimize(simulate::run_augmented(c, 1));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>((c.n + c.extra) * c.trials));
}
BENCHMARK(BM_RunAugmented)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_CompareWorkers(benchmark::State& state) {
    const auto c = config(100000, 32);
    const auto workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(simulate::compare(c, workers));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>((2 * c.n + c.extra) * c.trials));
}
BENCHMARK(BM_CompareWorkers)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
