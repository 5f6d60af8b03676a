#include "voa_cli/suites.hpp"

#include <benchmark/benchmark.h>

int main(int argc, char** argv) {
    for (const auto& info : voa::cli::suite_catalog())
        benchmark::RegisterBenchmark(("suite/" + info.name).c_str(), [name = info.name](benchmark::State& state) {
            for (auto _ : state) benchmark::DoNotOptimize(voa::cli::run_suite(name, 1));
        })->Unit(benchmark::kMillisecond);
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
}
