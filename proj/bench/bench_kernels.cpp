// Serial reference vs OpenMP kernels on Losert-basis workloads.

#include <benchmark/benchmark.h>

#include "sl2r/kernels.hpp"
#include "sl2r/losert.hpp"
#include "sl2r/plancherel.hpp"

using namespace sl2r;

namespace {

std::vector<GroupFunction> sector_functions(int count) {
    std::vector<GroupFunction> fs;
    for (int k = 0; k < count; ++k) fs.push_back(phi(2, 1, k));
    return fs;
}

void BM_Sample(benchmark::State& state, Exec exec) {
    const auto fs = sector_functions(static_cast<int>(state.range(0)));
    const auto& rule = losert_rule();
    for (auto _ : state) benchmark::DoNotOptimize(sample_functions(fs, rule, exec));
    state.counters["threads"] = exec == Exec::parallel ? kernel_threads() : 1;
}

void BM_Gram(benchmark::State& state, Exec exec) {
    const auto fs = sector_functions(static_cast<int>(state.range(0)));
    const auto& rule = losert_rule();
    const SampledSet s = sample_functions(fs, rule, Exec::serial);
    for (auto _ : state) benchmark::DoNotOptimize(radial_gram(s, s, rule, exec));
    state.counters["threads"] = exec == Exec::parallel ? kernel_threads() : 1;
}

void BM_Analyze(benchmark::State& state, Exec exec) {
    const GroupFunction f = phi(1, 0, 0);
    const SigmaGrid grid = SigmaGrid::make();
    analyze(f, 4, grid, transform_rule(), exec);  // warm the sample cache
    for (auto _ : state) benchmark::DoNotOptimize(analyze(f, 4, grid, transform_rule(), exec));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Sample, serial, Exec::serial)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_Sample, parallel, Exec::parallel)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_Gram, serial, Exec::serial)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_Gram, parallel, Exec::parallel)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(BM_Analyze, serial, Exec::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Analyze, parallel, Exec::parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
