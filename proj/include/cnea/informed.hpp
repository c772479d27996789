#pragma once

// Informed operator: detect dense, fitness-converged regions (victims),
// replace their redundant members with fit samples from unoccupied grid
// cells (informed mutation), then apply ordinary recombination and
// mutation to the whole population.

#include "cnea/benchmarks.hpp"
#include "cnea/core.hpp"
#include "cnea/niching.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cnea {

struct InformedOpConfig {
    double fit_eps = 0.01;         // relative fitness-std convergence threshold
    double replace_fraction = 0.5; // share of a victim region that is replaced
    std::size_t samples_per_slot = 20;
    double p_crossover = 0.9;
    double p_mutation = 0.01;      // per gene
    double sigma_fraction = 0.05;  // regular mutation std / coordinate range

    void validate() const;
};

struct VictimRegion {
    Region region;
    std::vector<std::size_t> replace_indices; // worst members, worst first
    std::vector<std::size_t> keep_indices;
};

/// A region is a victim iff fitness_std <= fit_eps (1 + |fitness_mean|).
/// The worst floor(replace_fraction * density) members (ties by index) are
/// slated for replacement; regions where that count is zero are skipped.
std::vector<VictimRegion> detect_victims(std::span<const Region> regions, const Population& pop,
                                         const InformedOpConfig& cfg);

struct Candidate {
    Genome genome;
    double fitness = 0.0;
};

/// Up to `count` evaluated uniform points whose grid cell is unoccupied.
/// Gives up after 10 * count raw draws.
std::vector<Candidate> sample_virgin(const SearchSpace& space, const GridIndex& grid, const BenchmarkFn& fn,
                                     RngStream& rng, std::size_t count);

/// Among candidates strictly better than the victim's fitness mean, the
/// index of the one farthest (mean distance) from the archived centroids.
/// Ties go to better fitness, then to the earlier candidate.
std::optional<std::size_t> select_replacement(std::span<const Candidate> candidates, const VictimRegion& victim,
                                              const MemoryArchive& archive);

struct InformedStats {
    std::size_t victims = 0;
    std::size_t replaced = 0;
    std::size_t fallbacks = 0; // replace slots where no candidate qualified
};

/// Applies informed mutation in place. Only members listed in some victim's
/// replace_indices can change; the population size never changes.
InformedStats informed_mutation(Population& pop, std::span<const VictimRegion> victims, const SearchSpace& space,
                                const GridIndex& grid, const BenchmarkFn& fn, MemoryArchive& archive,
                                RngStream& rng, const InformedOpConfig& cfg);

/// Offspring pool of the same size as `pop`: binary tournament parents,
/// arithmetic crossover with probability p_crossover, per-gene Gaussian
/// mutation, clamp, evaluate.
Population regular_ops(const Population& pop, const SearchSpace& space, const BenchmarkFn& fn, RngStream& rng,
                       const InformedOpConfig& cfg);

} // namespace cnea
