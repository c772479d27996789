#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in
// `serial::` and an OpenMP variant in `omp::`. The OpenMP variants produce
// bit-identical results to the serial ones: per-element work is
// independent and every reduction is finished in a fixed serial order.

#include "cnea/benchmarks.hpp"
#include "cnea/core.hpp"

#include <span>
#include <vector>

namespace cnea::kernels {

/// Below this many genome coordinates a parallel region costs more than it saves.
inline constexpr std::size_t kParallelThreshold = 1u << 14;

namespace serial {
void evaluate(std::span<Individual> members, const BenchmarkFn& fn);
std::vector<double> centroid(std::span<const Individual> members);
/// Euclidean distance of every member to `center`.
std::vector<double> distances_to(std::span<const Individual> members, std::span<const double> center);
} // namespace serial

namespace omp {
void evaluate(std::span<Individual> members, const BenchmarkFn& fn);
std::vector<double> centroid(std::span<const Individual> members);
std::vector<double> distances_to(std::span<const Individual> members, std::span<const double> center);
} // namespace omp

/// Dispatches to the OpenMP variant when the workload is large enough.
void evaluate(std::span<Individual> members, const BenchmarkFn& fn);
std::vector<double> centroid(std::span<const Individual> members);
std::vector<double> distances_to(std::span<const Individual> members, std::span<const double> center);

} // namespace cnea::kernels
