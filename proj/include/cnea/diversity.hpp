#pragma once

// Population diversity measures.

#include "cnea/core.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cnea {

/// Distance-to-average-point diversity:
///   (1 / (|L| |P|)) * sum_i || s_i - mean(s) ||
/// where |L| is the diagonal of the search box. Lies in [0, 1] for
/// members inside the box. Throws std::invalid_argument for an empty set.
double distance_to_average(std::span<const Individual> members, const SearchSpace& space);
double distance_to_average(const Population& pop, const SearchSpace& space);

/// Rows of equal length over a finite alphabet (symbols stored as integers).
class DiscretePopulation {
public:
    /// Throws std::invalid_argument for no rows, empty rows, or ragged rows.
    explicit DiscretePopulation(std::vector<std::vector<std::int32_t>> rows);
    /// Each character of each string is one symbol.
    static DiscretePopulation from_strings(const std::vector<std::string>& rows);

    std::size_t length() const noexcept { return rows_.front().size(); }
    std::size_t size() const noexcept { return rows_.size(); }
    const std::vector<std::vector<std::int32_t>>& rows() const noexcept { return rows_; }

private:
    std::vector<std::vector<std::int32_t>> rows_;
};

/// Maps every coordinate of every genome to its grid bin index
/// (same bin rule as the niching grid).
DiscretePopulation discretize(std::span<const Individual> members, const SearchSpace& space,
                              std::size_t bins);

/// Number of loci that still carry more than one distinct symbol.
std::size_t degree_of_diversity(const DiscretePopulation& pop);
/// Number of lost alleles: length - degree_of_diversity.
std::size_t maturity(const DiscretePopulation& pop);

/// Population (divide-by-count) standard deviation of fitness.
/// Throws for an empty list or an unevaluated member.
double fitness_std(std::span<const Individual> members);

} // namespace cnea
