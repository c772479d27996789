#include "cnea/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace cnea {

std::size_t binary_tournament(std::span<const Individual> members, RngStream& rng) {
    if (members.empty()) throw std::invalid_argument("tournament over an empty population");
    const std::size_t a = rng.index(members.size());
    const std::size_t b = rng.index(members.size());
    return members[b].f() < members[a].f() ? b : a;
}

std::vector<double> crossover_weights(std::size_t dim, RngStream& rng) {
    std::vector<double> w(dim);
    for (auto& v : w) v = rng.bernoulli(0.5) ? 1.0 : 0.0;
    if (dim > 0) w[rng.index(dim)] = rng.uniform();
    return w;
}

Genome blend(std::span<const double> a, std::span<const double> b, std::span<const double> weights) {
    if (a.size() != b.size() || a.size() != weights.size())
        throw std::invalid_argument("blend: parent and weight lengths differ");
    Genome child(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) child[j] = weights[j] * a[j] + (1.0 - weights[j]) * b[j];
    return child;
}

Genome arithmetic_crossover(std::span<const double> a, std::span<const double> b, RngStream& rng) {
    const auto w = crossover_weights(a.size(), rng);
    return blend(a, b, w);
}

Genome gaussian_mutate(std::span<const double> x, double variance, double p_gene, const SearchSpace& space,
                       RngStream& rng) {
    if (variance < 0.0) throw std::invalid_argument("mutation variance must be non-negative");
    Genome out(x.begin(), x.end());
    const double sd = std::sqrt(variance);
    for (auto& g : out)
        if (rng.bernoulli(p_gene)) g += sd * rng.gaussian();
    clamp_in_place(out, space);
    return out;
}

Genome scaled_gaussian_mutate(std::span<const double> x, double sigma_fraction, double p_gene,
                              const SearchSpace& space, RngStream& rng) {
    if (sigma_fraction < 0.0) throw std::invalid_argument("mutation sigma must be non-negative");
    Genome out(x.begin(), x.end());
    for (std::size_t j = 0; j < out.size(); ++j)
        if (rng.bernoulli(p_gene)) out[j] += sigma_fraction * space.range(j) * rng.gaussian();
    clamp_in_place(out, space);
    return out;
}

void PowerLaw::validate() const {
    if (!(truncation > 1.0)) throw std::invalid_argument("power law truncation must exceed 1");
    if (!(exponent > 0.0)) throw std::invalid_argument("power law exponent must be positive");
}

double PowerLaw::quantile(double alpha, double p) const {
    if (!(alpha > 0.0)) throw std::invalid_argument("power law alpha must be positive");
    if (p <= 0.0) return alpha;
    if (p >= 1.0) return alpha * truncation;
    if (exponent == 1.0) return alpha * std::pow(truncation, p);
    // CDF(u) = (1 - u^(1-k)) / (1 - T^(1-k)) on [1, T].
    const double q = 1.0 - exponent;
    const double tail = std::pow(truncation, q);
    return alpha * std::pow(1.0 - p * (1.0 - tail), 1.0 / q);
}

double PowerLaw::cdf(double alpha, double value) const {
    const double u = value / alpha;
    if (u <= 1.0) return 0.0;
    if (u >= truncation) return 1.0;
    if (exponent == 1.0) return std::log(u) / std::log(truncation);
    const double q = 1.0 - exponent;
    return (1.0 - std::pow(u, q)) / (1.0 - std::pow(truncation, q));
}

double pow_sample(double alpha, RngStream& rng, const PowerLaw& law) { return law.quantile(alpha, rng.uniform()); }

} // namespace cnea
