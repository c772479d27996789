#pragma once

// The seven analytical minimization problems, their bounds and optima.

#include "cnea/core.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cnea {

enum class FunctionId { ackley, griewank, rastrigin, rosenbrock, ellipsoid, schwefel12, rot_rastrigin };

inline constexpr std::array<FunctionId, 7> kAllFunctions = {
    FunctionId::ackley,     FunctionId::griewank,  FunctionId::rastrigin,    FunctionId::rosenbrock,
    FunctionId::ellipsoid,  FunctionId::schwefel12, FunctionId::rot_rastrigin};

std::string_view to_string(FunctionId id) noexcept;
/// Throws std::invalid_argument for unknown names.
FunctionId function_from_string(std::string_view name);

/// Sparse block rotation used by the rotated Rastrigin:
/// A(i,i) = 4/5, A(i,i+1) = 3/5 for odd i, A(i,i-1) = -3/5 for even i
/// (1-based), zero elsewhere. Requires an even dimension.
class RotationMatrix {
public:
    explicit RotationMatrix(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    /// Entry with 1-based indices.
    double at(std::size_t i, std::size_t k) const;
    /// y = A x, using the 2x2 block structure.
    std::vector<double> apply(std::span<const double> x) const;
    /// Row-major dense copy.
    std::vector<double> dense() const;

private:
    std::size_t dim_;
};

class BenchmarkFn {
public:
    /// Builds a function with its default bounds. `space_override` replaces
    /// the default box (used for the Schwefel 1.2 bound override).
    static BenchmarkFn make(FunctionId id, std::size_t dim,
                            std::optional<SearchSpace> space_override = std::nullopt);
    static BenchmarkFn make(std::string_view name, std::size_t dim,
                            std::optional<SearchSpace> space_override = std::nullopt);

    FunctionId id() const noexcept { return id_; }
    std::string_view name() const noexcept { return to_string(id_); }
    std::size_t dim() const noexcept { return space_.dim(); }
    const SearchSpace& space() const noexcept { return space_; }
    std::span<const double> optimum_point() const noexcept { return optimum_point_; }
    double optimum_value() const noexcept { return 0.0; }

    /// Throws std::invalid_argument on dimension mismatch.
    double evaluate(std::span<const double> x) const;

private:
    BenchmarkFn(FunctionId id, SearchSpace space);

    FunctionId id_;
    SearchSpace space_;
    std::vector<double> optimum_point_;
    std::optional<RotationMatrix> rotation_;
};

/// Default symmetric bound magnitude for each function.
double default_bound(FunctionId id) noexcept;

} // namespace cnea
