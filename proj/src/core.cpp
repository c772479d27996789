#include "cnea/core.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cnea {

SearchSpace::SearchSpace(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty())
        throw std::invalid_argument("search space must have at least one dimension");
    if (lower_.size() != upper_.size())
        throw std::invalid_argument("search space bound vectors differ in length");
    double sq = 0.0;
    for (std::size_t j = 0; j < lower_.size(); ++j) {
        if (!(lower_[j] < upper_[j]))
            throw std::invalid_argument("search space requires lower < upper at coordinate " +
                                        std::to_string(j));
        const double r = upper_[j] - lower_[j];
        sq += r * r;
    }
    diagonal_ = std::sqrt(sq);
}

SearchSpace SearchSpace::cube(std::size_t dim, double lo, double hi) {
    return SearchSpace(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

bool SearchSpace::contains(std::span<const double> x) const {
    if (x.size() != dim()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] < lower_[j] || x[j] > upper_[j]) return false;
    return true;
}

double Individual::f() const {
    if (!fitness) throw std::logic_error("individual has not been evaluated");
    return *fitness;
}

std::size_t Population::best_index() const {
    if (members.empty()) throw std::logic_error("best_index of empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < members.size(); ++i)
        if (members[i].f() < members[best].f()) best = i;
    return best;
}

double Population::mean_fitness() const {
    if (members.empty()) throw std::logic_error("mean_fitness of empty population");
    double sum = 0.0;
    for (const auto& m : members) sum += m.f();
    return sum / static_cast<double>(members.size());
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RngStream::uniform() {
    // 53 random bits, independent of the standard library's distribution code.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RngStream::gaussian() { return normal_(engine_); }

std::size_t RngStream::index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("RngStream::index requires n > 0");
    // Lemire-style rejection keeps the draw unbiased.
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
        r = engine_();
    } while (r >= limit);
    return static_cast<std::size_t>(r % bound);
}

bool RngStream::bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform() < p;
}

RngStream RngStream::split() {
    std::uint64_t z = engine_() + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return RngStream(z ^ (z >> 31));
}

Genome random_genome(const SearchSpace& space, RngStream& rng) {
    Genome g(space.dim());
    for (std::size_t j = 0; j < g.size(); ++j) g[j] = rng.uniform(space.lower(j), space.upper(j));
    return g;
}

Genome clamp(std::span<const double> genome, const SearchSpace& space) {
    Genome out(genome.begin(), genome.end());
    clamp_in_place(out, space);
    return out;
}

void clamp_in_place(Genome& genome, const SearchSpace& space) {
    if (genome.size() != space.dim())
        throw std::invalid_argument("clamp: genome length " + std::to_string(genome.size()) +
                                    " does not match space dimension " +
                                    std::to_string(space.dim()));
    for (std::size_t j = 0; j < genome.size(); ++j)
        genome[j] = std::clamp(genome[j], space.lower(j), space.upper(j));
}

} // namespace cnea
