// Serial reference against the OpenMP kernel on the same configuration.

#include <benchmark/benchmark.h>

#include "groupforge/simulation.hpp"

namespace gf = groupforge;

namespace {

gf::RunConfig bench_config(benchmark::State const& state)
{
    gf::RunConfig c;
    c.format = state.range(0) == 0 ? gf::FormatKind::official : gf::FormatKind::imbalanced;
    c.num_draws = static_cast<std::uint64_t>(state.range(1));
    c.sims_per_draw = 100;
    return c;
}

void BM_Serial(benchmark::State& state)
{
    auto const table = gf::default_team_table();
    auto const config = bench_config(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(gf::run_monte_carlo_serial(config, table));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.total_runs()));
}

void BM_Parallel(benchmark::State& state)
{
    auto const table = gf::default_team_table();
    auto const config = bench_config(state);
    for (auto _ : state)
        benchmark::DoNotOptimize(gf::run_monte_carlo(config, table));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.total_runs()));
}

}  // namespace

BENCHMARK(BM_Serial)->ArgsProduct({{0, 1}, {8, 32}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)->ArgsProduct({{0, 1}, {8, 32}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
