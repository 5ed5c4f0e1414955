#include <benchmark/benchmark.h>

#include <omp.h>

#include "bms/clusterer.hpp"
#include "bms/datasets.hpp"
#include "bms/engine.hpp"

namespace {

bms::Configuration points(std::size_t n) {
    return bms::standardize(bms::datasets::three_blobs(n, 7).points).points;
}

const bms::Kernel& kernel_for(std::int64_t id) {
    static const bms::Kernel gaussian = bms::Kernel::builtin(bms::KernelId::gaussian);
    static const bms::Kernel epanechnikov = bms::Kernel::builtin(bms::KernelId::epanechnikov);
    return id == 0 ? gaussian : epanechnikov;
}

void set_labels(benchmark::State& state) {
    state.SetLabel(state.range(1) == 0 ? "gaussian" : "epanechnikov");
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_step_serial(benchmark::State& state) {
    const auto cfg = points(static_cast<std::size_t>(state.range(0)));
    const auto& kernel = kernel_for(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(bms::serial::bms_step(cfg, kernel, 0.5));
    set_labels(state);
}

void BM_step_openmp(benchmark::State& state) {
    const auto cfg = points(static_cast<std::size_t>(state.range(0)));
    const auto& kernel = kernel_for(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(bms::bms_step(cfg, kernel, 0.5));
    set_labels(state);
    state.counters["threads"] = omp_get_max_threads();
}

void BM_objective_serial(benchmark::State& state) {
    const auto cfg = points(static_cast<std::size_t>(state.range(0)));
    const auto& kernel = kernel_for(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(bms::serial::objective(cfg, kernel, 0.5));
    set_labels(state);
}

void BM_objective_openmp(benchmark::State& state) {
    const auto cfg = points(static_cast<std::size_t>(state.range(0)));
    const auto& kernel = kernel_for(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(bms::objective(cfg, kernel, 0.5));
    set_labels(state);
    state.counters["threads"] = omp_get_max_threads();
}

void sizes(benchmark::internal::Benchmark* b) {
    for (std::int64_t n : {250, 1000, 4000})
        for (std::int64_t k : {0, 1}) b->Args({n, k});
    b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_step_serial)->Apply(sizes);
BENCHMARK(BM_step_openmp)->Apply(sizes);
BENCHMARK(BM_objective_serial)->Apply(sizes);
BENCHMARK(BM_objective_openmp)->Apply(sizes);

BENCHMARK_MAIN();
