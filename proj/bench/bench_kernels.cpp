// Serial reference kernels against their OpenMP counterparts.

#include "cnea/benchmarks.hpp"
#include "cnea/kernels.hpp"

#include <benchmark/benchmark.h>

namespace {

std::vector<cnea::Individual> population(const cnea::BenchmarkFn& fn, std::size_t n) {
    cnea::RngStream rng(42);
    std::vector<cnea::Individual> members;
    members.reserve(n);
    for (std::size_t i = 0; i < n; ++i) members.push_back({cnea::random_genome(fn.space(), rng), std::nullopt});
    return members;
}

template <auto Kernel>
void BM_Evaluate(benchmark::State& state) {
    const auto fn = cnea::BenchmarkFn::make("rot_rastrigin", static_cast<std::size_t>(state.range(1)));
    auto members = population(fn, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        Kernel(members, fn);
        benchmark::DoNotOptimize(members.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Centroid, auto Distances>
void BM_Diversity(benchmark::State& state) {
    const auto fn = cnea::BenchmarkFn::make("ackley", static_cast<std::size_t>(state.range(1)));
    const auto members = population(fn, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const auto c = Centroid(members);
        auto d = Distances(members, c);
        benchmark::DoNotOptimize(d.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int n : {300, 4000})
        for (int dim : {20, 100}) b->Args({n, dim});
}

} // namespace

BENCHMARK(BM_Evaluate<cnea::kernels::serial::evaluate>)->Name("evaluate/serial")->Apply(sizes);
BENCHMARK(BM_Evaluate<cnea::kernels::omp::evaluate>)->Name("evaluate/omp")->Apply(sizes)->UseRealTime();
BENCHMARK(BM_Diversity<cnea::kernels::serial::centroid, cnea::kernels::serial::distances_to>)
    ->Name("diversity/serial")
    ->Apply(sizes);
BENCHMARK(BM_Diversity<cnea::kernels::omp::centroid, cnea::kernels::omp::distances_to>)
    ->Name("diversity/omp")
    ->Apply(sizes)
    ->UseRealTime();

BENCHMARK_MAIN();
