#include "cnea/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cnea::kernels {

namespace {

std::size_t dim_of(std::span<const Individual> members) {
    if (members.empty()) throw std::invalid_argument("kernel called on an empty member list");
    return members.front().genome.size();
}

bool worth_parallel(std::size_t n, std::size_t dim) { return n * dim >= kParallelThreshold; }

} // namespace

namespace serial {

// Centroids are accumulated as offsets from the first member, so a
// population of identical genomes has that genome as its exact centroid.

void evaluate(std::span<Individual> members, const BenchmarkFn& fn) {
    for (auto& m : members) m.fitness = fn.evaluate(m.genome);
}

std::vector<double> centroid(std::span<const Individual> members) {
    const std::size_t dim = dim_of(members);
    std::vector<double> c(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
        const double origin = members.front().genome[j];
        double s = 0.0;
        for (const auto& m : members) s += m.genome[j] - origin;
        c[j] = origin + s / static_cast<double>(members.size());
    }
    return c;
}

std::vector<double> distances_to(std::span<const Individual> members, std::span<const double> center) {
    std::vector<double> d(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < center.size(); ++j) {
            const double diff = members[i].genome[j] - center[j];
            sq += diff * diff;
        }
        d[i] = std::sqrt(sq);
    }
    return d;
}

} // namespace serial

namespace omp {

void evaluate(std::span<Individual> members, const BenchmarkFn& fn) {
    const auto n = static_cast<std::int64_t>(members.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) members[i].fitness = fn.evaluate(members[i].genome);
}

std::vector<double> centroid(std::span<const Individual> members) {
    const std::size_t dim = dim_of(members);
    std::vector<double> c(dim, 0.0);
    const auto d = static_cast<std::int64_t>(dim);
    // Parallel over coordinates; each coordinate sums members in order.
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < d; ++j) {
        const double origin = members.front().genome[j];
        double s = 0.0;
        for (const auto& m : members) s += m.genome[j] - origin;
        c[j] = origin + s / static_cast<double>(members.size());
    }
    return c;
}

std::vector<double> distances_to(std::span<const Individual> members, std::span<const double> center) {
    std::vector<double> d(members.size());
    const auto n = static_cast<std::int64_t>(members.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < center.size(); ++j) {
            const double diff = members[i].genome[j] - center[j];
            sq += diff * diff;
        }
        d[i] = std::sqrt(sq);
    }
    return d;
}

} // namespace omp

void evaluate(std::span<Individual> members, const BenchmarkFn& fn) {
    if (worth_parallel(members.size(), fn.dim()))
        omp::evaluate(members, fn);
    else
        serial::evaluate(members, fn);
}

std::vector<double> centroid(std::span<const Individual> members) {
    return worth_parallel(members.size(), dim_of(members)) ? omp::centroid(members)
                                                           : serial::centroid(members);
}

std::vector<double> distances_to(std::span<const Individual> members, std::span<const double> center) {
    return worth_parallel(members.size(), center.size()) ? omp::distances_to(members, center)
                                                         : serial::distances_to(members, center);
}

} // namespace cnea::kernels
