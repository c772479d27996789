#pragma once

// Variation and selection operators shared by every engine.

#include "cnea/core.hpp"

#include <span>
#include <vector>

namespace cnea {

/// Index of the better (smaller fitness) of two uniform picks; the first
/// pick wins ties.
std::size_t binary_tournament(std::span<const Individual> members, RngStream& rng);

/// Crossover weights: every entry 0 or 1 at random, except one uniformly
/// chosen position that gets a uniform value in [0, 1].
std::vector<double> crossover_weights(std::size_t dim, RngStream& rng);

/// child_j = w_j a_j + (1 - w_j) b_j
Genome blend(std::span<const double> a, std::span<const double> b, std::span<const double> weights);

Genome arithmetic_crossover(std::span<const double> a, std::span<const double> b, RngStream& rng);

/// Adds N(0, variance) to each gene selected with probability p_gene, then
/// clamps into the space.
Genome gaussian_mutate(std::span<const double> x, double variance, double p_gene, const SearchSpace& space,
                       RngStream& rng);

/// Per-gene Gaussian noise with a per-dimension standard deviation
/// (sigma_fraction times the coordinate range), then clamp.
Genome scaled_gaussian_mutate(std::span<const double> x, double sigma_fraction, double p_gene,
                              const SearchSpace& space, RngStream& rng);

/// Truncated power law used for mutation variances: u has density
/// proportional to u^-exponent on [1, truncation]; the sample is alpha u.
struct PowerLaw {
    double exponent = 2.0;
    double truncation = 1000.0;

    void validate() const;
    /// Inverse CDF at cumulative probability p in [0, 1].
    double quantile(double alpha, double p) const;
    double cdf(double alpha, double value) const;
};

/// alpha u with u drawn by inverse CDF from one uniform draw.
double pow_sample(double alpha, RngStream& rng, const PowerLaw& law = {});

} // namespace cnea
