#include "cnea/informed.hpp"

#include "cnea/kernels.hpp"
#include "cnea/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cnea {

void InformedOpConfig::validate() const {
    if (!(fit_eps >= 0.0)) throw std::invalid_argument("fit_eps must be non-negative");
    if (!(replace_fraction > 0.0 && replace_fraction < 1.0))
        throw std::invalid_argument("replace_fraction must lie in (0, 1)");
    if (!(p_crossover >= 0.0 && p_crossover <= 1.0)) throw std::invalid_argument("p_crossover must lie in [0, 1]");
    if (!(p_mutation >= 0.0 && p_mutation <= 1.0)) throw std::invalid_argument("p_mutation must lie in [0, 1]");
    if (!(sigma_fraction >= 0.0)) throw std::invalid_argument("sigma_fraction must be non-negative");
}

std::vector<VictimRegion> detect_victims(std::span<const Region> regions, const Population& pop,
                                         const InformedOpConfig& cfg) {
    std::vector<VictimRegion> victims;
    for (const auto& r : regions) {
        if (r.fitness_std > cfg.fit_eps * (1.0 + std::abs(r.fitness_mean))) continue;
        const auto slots = static_cast<std::size_t>(std::floor(cfg.replace_fraction * static_cast<double>(r.density)));
        if (slots == 0) continue;
        std::vector<std::size_t> order = r.member_indices;
        // Worst first; equal fitness resolved by index.
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (pop[a].f() != pop[b].f()) return pop[a].f() > pop[b].f();
            return a < b;
        });
        VictimRegion v;
        v.region = r;
        v.replace_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(slots));
        v.keep_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(slots), order.end());
        victims.push_back(std::move(v));
    }
    return victims;
}

std::vector<Candidate> sample_virgin(const SearchSpace& space, const GridIndex& grid, const BenchmarkFn& fn,
                                     RngStream& rng, std::size_t count) {
    std::vector<Individual> accepted;
    if (count == 0) return {};
    // Every cell occupied: no virgin zone exists.
    if (grid.cells().size() >= grid.cell_capacity()) return {};
    const std::size_t max_draws = 10 * count;
    for (std::size_t draw = 0; draw < max_draws && accepted.size() < count; ++draw) {
        auto g = random_genome(space, rng);
        if (!grid.occupied(grid.key_of(g))) accepted.push_back(Individual{std::move(g), std::nullopt});
    }
    kernels::evaluate(accepted, fn);
    std::vector<Candidate> out;
    out.reserve(accepted.size());
    for (auto& a : accepted) out.push_back(Candidate{std::move(a.genome), *a.fitness});
    return out;
}

std::optional<std::size_t> select_replacement(std::span<const Candidate> candidates, const VictimRegion& victim,
                                              const MemoryArchive& archive) {
    std::optional<std::size_t> best;
    double best_dist = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& c = candidates[i];
        if (!(c.fitness < victim.region.fitness_mean)) continue;
        const double dist = archive.mean_distance(c.genome);
        if (!best || dist > best_dist || (dist == best_dist && c.fitness < candidates[*best].fitness)) {
            best = i;
            best_dist = dist;
        }
    }
    return best;
}

InformedStats informed_mutation(Population& pop, std::span<const VictimRegion> victims, const SearchSpace& space,
                                const GridIndex& grid, const BenchmarkFn& fn, MemoryArchive& archive,
                                RngStream& rng, const InformedOpConfig& cfg) {
    InformedStats stats;
    stats.victims = victims.size();
    for (const auto& v : victims) {
        archive.push(v.region.centroid);
        for (auto slot : v.replace_indices) {
            const auto candidates = sample_virgin(space, grid, fn, rng, cfg.samples_per_slot);
            const auto pick = select_replacement(candidates, v, archive);
            if (!pick) {
                ++stats.fallbacks;
                continue;
            }
            pop[slot].genome = candidates[*pick].genome;
            pop[slot].fitness = candidates[*pick].fitness;
            ++stats.replaced;
        }
    }
    return stats;
}

Population regular_ops(const Population& pop, const SearchSpace& space, const BenchmarkFn& fn, RngStream& rng,
                       const InformedOpConfig& cfg) {
    Population offspring;
    offspring.generation = pop.generation;
    offspring.members.reserve(pop.size());
    for (std::size_t k = 0; k < pop.size(); ++k) {
        const auto& a = pop[binary_tournament(pop.members, rng)];
        const auto& b = pop[binary_tournament(pop.members, rng)];
        Genome child = rng.bernoulli(cfg.p_crossover) ? arithmetic_crossover(a.genome, b.genome, rng) : a.genome;
        child = scaled_gaussian_mutate(child, cfg.sigma_fraction, cfg.p_mutation, space, rng);
        offspring.members.push_back(Individual{std::move(child), std::nullopt});
    }
    kernels::evaluate(offspring.members, fn);
    return offspring;
}

} // namespace cnea
