#include "cnea/diversity.hpp"

#include "cnea/kernels.hpp"
#include "cnea/niching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cnea {

double distance_to_average(std::span<const Individual> members, const SearchSpace& space) {
    if (members.empty()) throw std::invalid_argument("distance_to_average: empty population");
    for (const auto& m : members)
        if (m.genome.size() != space.dim())
            throw std::invalid_argument("distance_to_average: genome dimension mismatch");
    const auto center = kernels::centroid(members);
    const auto dist = kernels::distances_to(members, center);
    double sum = 0.0;
    for (double d : dist) sum += d;
    return sum / (space.diagonal() * static_cast<double>(members.size()));
}

double distance_to_average(const Population& pop, const SearchSpace& space) {
    return distance_to_average(std::span<const Individual>(pop.members), space);
}

DiscretePopulation::DiscretePopulation(std::vector<std::vector<std::int32_t>> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("discrete population has no rows");
    const std::size_t l = rows_.front().size();
    if (l == 0) throw std::invalid_argument("discrete population rows must be non-empty");
    for (const auto& r : rows_)
        if (r.size() != l) throw std::invalid_argument("discrete population rows differ in length");
}

DiscretePopulation DiscretePopulation::from_strings(const std::vector<std::string>& rows) {
    std::vector<std::vector<std::int32_t>> out;
    out.reserve(rows.size());
    for (const auto& s : rows) out.emplace_back(s.begin(), s.end());
    return DiscretePopulation(std::move(out));
}

DiscretePopulation discretize(std::span<const Individual> members, const SearchSpace& space, std::size_t bins) {
    std::vector<std::vector<std::int32_t>> rows;
    rows.reserve(members.size());
    for (const auto& m : members) {
        std::vector<std::int32_t> row(space.dim());
        for (std::size_t j = 0; j < row.size(); ++j)
            row[j] = static_cast<std::int32_t>(bin_index(m.genome[j], space.lower(j), space.upper(j), bins));
        rows.push_back(std::move(row));
    }
    return DiscretePopulation(std::move(rows));
}

std::size_t degree_of_diversity(const DiscretePopulation& pop) {
    std::size_t mixed = 0;
    const auto& rows = pop.rows();
    for (std::size_t j = 0; j < pop.length(); ++j) {
        const auto first = rows.front()[j];
        if (std::any_of(rows.begin() + 1, rows.end(), [&](const auto& r) { return r[j] != first; })) ++mixed;
    }
    return mixed;
}

std::size_t maturity(const DiscretePopulation& pop) { return pop.length() - degree_of_diversity(pop); }

double fitness_std(std::span<const Individual> members) {
    if (members.empty()) throw std::invalid_argument("fitness_std: empty member list");
    double mean = 0.0;
    for (const auto& m : members) mean += m.f();
    mean /= static_cast<double>(members.size());
    double ss = 0.0;
    for (const auto& m : members) {
        const double d = m.f() - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(members.size()));
}

} // namespace cnea
