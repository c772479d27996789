#pragma once

// Grid niching: coarse identification of genotypic clusters as occupied
// cells of a uniform grid over the search box, plus the per-generation
// memory of region centroids.
//
// Resolution, density rule and projection follow an engineering
// reconstruction; all of them are configurable through GridConfig.

#include "cnea/core.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cnea {

struct GridConfig {
    std::size_t bins = 4;            // G, bins per keyed dimension
    std::size_t max_full_dims = 10;  // d_max: key on every dimension up to this
    std::size_t projected_dims = 10; // d_proj: keyed dimensions above d_max
    double dense_fraction = 0.05;    // tau_dense

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// floor(G (x - lo) / (hi - lo)) clamped to [0, G-1].
std::size_t bin_index(double x, double lo, double hi, std::size_t bins);

using CellKey = std::vector<std::uint32_t>;

/// Which genome coordinates make up a cell key. Drawn once per run.
class KeyProjection {
public:
    /// All dimensions when dim <= max_full_dims, otherwise a sorted random
    /// subset of projected_dims dimensions.
    static KeyProjection draw(std::size_t dim, const GridConfig& cfg, RngStream& rng);
    static KeyProjection identity(std::size_t dim);

    std::span<const std::size_t> dims() const noexcept { return dims_; }
    bool is_full(std::size_t dim) const noexcept { return dims_.size() == dim; }

private:
    explicit KeyProjection(std::vector<std::size_t> dims) : dims_(std::move(dims)) {}
    std::vector<std::size_t> dims_;
};

class GridIndex {
public:
    GridIndex(const SearchSpace& space, std::size_t bins, KeyProjection projection);

    CellKey key_of(std::span<const double> x) const;
    void insert(std::size_t member, std::span<const double> x);
    bool occupied(const CellKey& key) const { return cells_.contains(key); }

    std::size_t bins() const noexcept { return bins_; }
    const KeyProjection& projection() const noexcept { return projection_; }
    const std::map<CellKey, std::vector<std::size_t>>& cells() const noexcept { return cells_; }
    /// Number of distinct keys, G^(keyed dims), saturating at SIZE_MAX.
    std::size_t cell_capacity() const noexcept;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::size_t bins_;
    KeyProjection projection_;
    std::map<CellKey, std::vector<std::size_t>> cells_;
};

/// Partitions the population into occupied grid cells.
GridIndex build_grid(const Population& pop, const SearchSpace& space, std::size_t bins,
                     const KeyProjection& projection);

struct Region {
    CellKey cell_key;
    std::vector<std::size_t> member_indices;
    std::vector<double> centroid;
    std::size_t density = 0;
    double fitness_mean = 0.0;
    double fitness_std = 0.0;
};

/// Minimum member count for a cell to count as dense: max(2, ceil(tau N)).
std::size_t density_threshold(std::size_t population_size, double dense_fraction);

/// Dense regions sorted by density descending, then fitness mean ascending.
std::vector<Region> high_density_regions(const GridIndex& grid, const Population& pop, double dense_fraction);

/// One JSON object (single line) describing a region.
std::string region_json_line(std::size_t generation, const Region& region);

/// Centroids of the regions already handled in the current generation.
class MemoryArchive {
public:
    void clear() noexcept { centroids_.clear(); }
    void push(std::vector<double> centroid);
    /// Mean Euclidean distance from x to every stored centroid. An empty
    /// archive returns +infinity, which outranks every finite distance.
    double mean_distance(std::span<const double> x) const;

    std::size_t size() const noexcept { return centroids_.size(); }
    bool empty() const noexcept { return centroids_.empty(); }

private:
    std::vector<std::vector<double>> centroids_;
};

} // namespace cnea
