#include "cnea/niching.hpp"

#include "cnea/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace cnea {

void GridConfig::validate() const {
    if (bins < 2) throw std::invalid_argument("grid bins must be >= 2");
    if (max_full_dims < 1) throw std::invalid_argument("grid max_full_dims must be >= 1");
    if (projected_dims < 1) throw std::invalid_argument("grid projected_dims must be >= 1");
    if (!(dense_fraction >= 0.0 && dense_fraction <= 1.0))
        throw std::invalid_argument("grid dense_fraction must lie in [0, 1]");
}

std::size_t bin_index(double x, double lo, double hi, std::size_t bins) {
    const double scaled = std::floor(static_cast<double>(bins) * (x - lo) / (hi - lo));
    if (!(scaled > 0.0)) return 0;
    const auto top = static_cast<double>(bins - 1);
    return scaled >= top ? bins - 1 : static_cast<std::size_t>(scaled);
}

KeyProjection KeyProjection::draw(std::size_t dim, const GridConfig& cfg, RngStream& rng) {
    if (dim <= cfg.max_full_dims || cfg.projected_dims >= dim) return identity(dim);
    // Partial Fisher-Yates: first projected_dims slots become the subset.
    std::vector<std::size_t> all(dim);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < cfg.projected_dims; ++i) {
        const std::size_t k = i + rng.index(dim - i);
        std::swap(all[i], all[k]);
    }
    all.resize(cfg.projected_dims);
    std::sort(all.begin(), all.end());
    return KeyProjection(std::move(all));
}

KeyProjection KeyProjection::identity(std::size_t dim) {
    std::vector<std::size_t> all(dim);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return KeyProjection(std::move(all));
}

GridIndex::GridIndex(const SearchSpace& space, std::size_t bins, KeyProjection projection)
    : lower_(space.lower().begin(), space.lower().end()),
      upper_(space.upper().begin(), space.upper().end()),
      bins_(bins),
      projection_(std::move(projection)) {
    if (bins_ < 2) throw std::invalid_argument("grid requires at least 2 bins per dimension");
    for (auto d : projection_.dims())
        if (d >= space.dim()) throw std::invalid_argument("key projection refers to a missing dimension");
}

CellKey GridIndex::key_of(std::span<const double> x) const {
    if (x.size() != lower_.size()) throw std::invalid_argument("grid key: dimension mismatch");
    CellKey key;
    key.reserve(projection_.dims().size());
    for (auto j : projection_.dims())
        key.push_back(static_cast<std::uint32_t>(bin_index(x[j], lower_[j], upper_[j], bins_)));
    return key;
}

void GridIndex::insert(std::size_t member, std::span<const double> x) { cells_[key_of(x)].push_back(member); }

std::size_t GridIndex::cell_capacity() const noexcept {
    std::size_t cap = 1;
    for (std::size_t i = 0; i < projection_.dims().size(); ++i) {
        if (cap > std::numeric_limits<std::size_t>::max() / bins_) return std::numeric_limits<std::size_t>::max();
        cap *= bins_;
    }
    return cap;
}

GridIndex build_grid(const Population& pop, const SearchSpace& space, std::size_t bins,
                     const KeyProjection& projection) {
    GridIndex grid(space, bins, projection);
    for (std::size_t i = 0; i < pop.size(); ++i) grid.insert(i, pop[i].genome);
    return grid;
}

std::size_t density_threshold(std::size_t population_size, double dense_fraction) {
    const auto frac = static_cast<std::size_t>(std::ceil(dense_fraction * static_cast<double>(population_size)));
    return std::max<std::size_t>(2, frac);
}

std::vector<Region> high_density_regions(const GridIndex& grid, const Population& pop, double dense_fraction) {
    const std::size_t threshold = density_threshold(pop.size(), dense_fraction);
    std::vector<Region> regions;
    for (const auto& [key, idx] : grid.cells()) {
        if (idx.size() < threshold) continue;
        Region r;
        r.cell_key = key;
        r.member_indices = idx;
        r.density = idx.size();
        std::vector<Individual> members;
        members.reserve(idx.size());
        for (auto i : idx) members.push_back(pop[i]);
        r.centroid.assign(pop[idx.front()].genome.size(), 0.0);
        for (const auto& m : members)
            for (std::size_t j = 0; j < r.centroid.size(); ++j) r.centroid[j] += m.genome[j];
        for (auto& c : r.centroid) c /= static_cast<double>(members.size());
        double sum = 0.0;
        for (const auto& m : members) sum += m.f();
        r.fitness_mean = sum / static_cast<double>(members.size());
        r.fitness_std = fitness_std(members);
        regions.push_back(std::move(r));
    }
    // Stable sort keeps cell-key order as the final tiebreak.
    std::stable_sort(regions.begin(), regions.end(), [](const Region& a, const Region& b) {
        if (a.density != b.density) return a.density > b.density;
        return a.fitness_mean < b.fitness_mean;
    });
    return regions;
}

std::string region_json_line(std::size_t generation, const Region& region) {
    nlohmann::json j;
    j["generation"] = generation;
    j["cell_key"] = region.cell_key;
    j["density"] = region.density;
    j["fitness_mean"] = region.fitness_mean;
    j["fitness_std"] = region.fitness_std;
    return j.dump();
}

void MemoryArchive::push(std::vector<double> centroid) {
    if (!centroids_.empty() && centroid.size() != centroids_.front().size())
        throw std::invalid_argument("memory archive: dimension mismatch");
    centroids_.push_back(std::move(centroid));
}

double MemoryArchive::mean_distance(std::span<const double> x) const {
    if (centroids_.empty()) return std::numeric_limits<double>::infinity();
    if (x.size() != centroids_.front().size()) throw std::invalid_argument("memory archive: dimension mismatch");
    double total = 0.0;
    for (const auto& c : centroids_) {
        double sq = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double d = x[j] - c[j];
            sq += d * d;
        }
        total += std::sqrt(sq);
    }
    return total / static_cast<double>(centroids_.size());
}

} // namespace cnea
