#pragma once

// Foundational types: search spaces, individuals, populations and the
// seeded random stream every run owns.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace cnea {

using Genome = std::vector<double>;

/// Box-constrained real search space. Every coordinate has a closed
/// interval [lower, upper] with lower < upper.
class SearchSpace {
public:
    SearchSpace(std::vector<double> lower, std::vector<double> upper);

    /// Hypercube [lo, hi]^dim.
    static SearchSpace cube(std::size_t dim, double lo, double hi);

    std::size_t dim() const noexcept { return lower_.size(); }
    std::span<const double> lower() const noexcept { return lower_; }
    std::span<const double> upper() const noexcept { return upper_; }
    double lower(std::size_t j) const { return lower_[j]; }
    double upper(std::size_t j) const { return upper_[j]; }
    double range(std::size_t j) const { return upper_[j] - lower_[j]; }

    /// Length of the box diagonal, |L|.
    double diagonal() const noexcept { return diagonal_; }

    bool contains(std::span<const double> x) const;

    bool operator==(const SearchSpace&) const = default;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
    double diagonal_ = 0.0;
};

struct Individual {
    Genome genome;
    std::optional<double> fitness;

    bool evaluated() const noexcept { return fitness.has_value(); }
    /// Fitness value; throws std::logic_error when unevaluated.
    double f() const;
};

struct Population {
    std::vector<Individual> members;
    std::size_t generation = 0;

    std::size_t size() const noexcept { return members.size(); }
    bool empty() const noexcept { return members.empty(); }
    Individual& operator[](std::size_t i) { return members[i]; }
    const Individual& operator[](std::size_t i) const { return members[i]; }

    /// Index of the member with the smallest fitness (first on ties).
    std::size_t best_index() const;
    double best_fitness() const { return members[best_index()].f(); }
    double mean_fitness() const;
};

/// Seeded random stream. Equal seeds give identical draw sequences within
/// one build. A stream belongs to exactly one run.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    /// Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi);
    double gaussian();
    /// Uniform index in [0, n). n must be positive.
    std::size_t index(std::size_t n);
    bool bernoulli(double p);
    std::uint64_t next_u64() { return engine_(); }

    /// Independent child stream derived deterministically from this one.
    RngStream split();

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

Genome random_genome(const SearchSpace& space, RngStream& rng);

/// Projects each coordinate onto its interval. Throws std::invalid_argument
/// on length mismatch.
Genome clamp(std::span<const double> genome, const SearchSpace& space);
void clamp_in_place(Genome& genome, const SearchSpace& space);

} // namespace cnea
