#include "cnea/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cnea {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double ackley(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(kTwoPi * v);
    }
    return 20.0 + std::numbers::e - 20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n);
}

// Shifted by 100 in every coordinate, so the minimizer is x_i = 100.
double griewank(std::span<const double> x) {
    double sum = 0.0, prod = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double z = x[i] - 100.0;
        sum += z * z;
        prod *= std::cos(z / std::sqrt(static_cast<double>(i + 1)));
    }
    return sum / 4000.0 - prod + 1.0;
}

double rastrigin(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v - 10.0 * std::cos(kTwoPi * v) + 10.0;
    return s;
}

double rosenbrock(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = x[i] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double ellipsoid(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * x[i] * x[i];
    return s;
}

double schwefel12(std::span<const double> x) {
    double s = 0.0, prefix = 0.0;
    for (double v : x) {
        prefix += v;
        s += prefix * prefix;
    }
    return s;
}

double rotated_rastrigin(const RotationMatrix& a, std::span<const double> x) {
    const auto y = a.apply(x);
    double s = 10.0 * static_cast<double>(y.size());
    for (double v : y) s += v * v - 10.0 * std::cos(kTwoPi * v);
    return s;
}

} // namespace

std::string_view to_string(FunctionId id) noexcept {
    switch (id) {
    case FunctionId::ackley: return "ackley";
    case FunctionId::griewank: return "griewank";
    case FunctionId::rastrigin: return "rastrigin";
    case FunctionId::rosenbrock: return "rosenbrock";
    case FunctionId::ellipsoid: return "ellipsoid";
    case FunctionId::schwefel12: return "schwefel12";
    case FunctionId::rot_rastrigin: return "rot_rastrigin";
    }
    return "?";
}

FunctionId function_from_string(std::string_view name) {
    for (auto id : kAllFunctions)
        if (to_string(id) == name) return id;
    throw std::invalid_argument("unknown benchmark function '" + std::string(name) + "'");
}

double default_bound(FunctionId id) noexcept {
    switch (id) {
    case FunctionId::ackley: return 30.0;
    case FunctionId::griewank: return 600.0;
    case FunctionId::rosenbrock: return 100.0;
    case FunctionId::schwefel12: return 64.0;
    case FunctionId::rastrigin:
    case FunctionId::ellipsoid:
    case FunctionId::rot_rastrigin: return 5.12;
    }
    return 0.0;
}

RotationMatrix::RotationMatrix(std::size_t dim) : dim_(dim) {
    if (dim == 0 || dim % 2 != 0)
        throw std::invalid_argument("rotation matrix requires a positive even dimension, got " +
                                    std::to_string(dim));
}

double RotationMatrix::at(std::size_t i, std::size_t k) const {
    if (i < 1 || i > dim_ || k < 1 || k > dim_)
        throw std::out_of_range("rotation matrix index out of range");
    if (i == k) return 0.8;
    if (i % 2 == 1 && k == i + 1) return 0.6;
    if (i % 2 == 0 && k + 1 == i) return -0.6;
    return 0.0;
}

std::vector<double> RotationMatrix::apply(std::span<const double> x) const {
    if (x.size() != dim_) throw std::invalid_argument("rotation: dimension mismatch");
    std::vector<double> y(dim_);
    for (std::size_t i = 0; i < dim_; i += 2) {
        y[i] = 0.8 * x[i] + 0.6 * x[i + 1];
        y[i + 1] = -0.6 * x[i] + 0.8 * x[i + 1];
    }
    return y;
}

std::vector<double> RotationMatrix::dense() const {
    std::vector<double> m(dim_ * dim_);
    for (std::size_t i = 1; i <= dim_; ++i)
        for (std::size_t k = 1; k <= dim_; ++k) m[(i - 1) * dim_ + (k - 1)] = at(i, k);
    return m;
}

BenchmarkFn::BenchmarkFn(FunctionId id, SearchSpace space) : id_(id), space_(std::move(space)) {
    const double opt = id == FunctionId::rosenbrock ? 1.0 : id == FunctionId::griewank ? 100.0 : 0.0;
    optimum_point_.assign(space_.dim(), opt);
    if (id == FunctionId::rot_rastrigin) rotation_.emplace(space_.dim());
}

BenchmarkFn BenchmarkFn::make(FunctionId id, std::size_t dim, std::optional<SearchSpace> space_override) {
    if (dim == 0) throw std::invalid_argument("benchmark dimension must be positive");
    if (id == FunctionId::rot_rastrigin && dim % 2 != 0)
        throw std::invalid_argument("rot_rastrigin requires an even dimension, got " + std::to_string(dim));
    if (space_override && space_override->dim() != dim)
        throw std::invalid_argument("bounds override dimension does not match");
    const double b = default_bound(id);
    return BenchmarkFn(id, space_override ? std::move(*space_override) : SearchSpace::cube(dim, -b, b));
}

BenchmarkFn BenchmarkFn::make(std::string_view name, std::size_t dim, std::optional<SearchSpace> space_override) {
    return make(function_from_string(name), dim, std::move(space_override));
}

double BenchmarkFn::evaluate(std::span<const double> x) const {
    if (x.size() != dim())
        throw std::invalid_argument(std::string(name()) + ": expected " + std::to_string(dim()) +
                                    " coordinates, got " + std::to_string(x.size()));
    switch (id_) {
    case FunctionId::ackley: return ackley(x);
    case FunctionId::griewank: return griewank(x);
    case FunctionId::rastrigin: return rastrigin(x);
    case FunctionId::rosenbrock: return rosenbrock(x);
    case FunctionId::ellipsoid: return ellipsoid(x);
    case FunctionId::schwefel12: return schwefel12(x);
    case FunctionId::rot_rastrigin: return rotated_rastrigin(*rotation_, x);
    }
    return 0.0;
}

} // namespace cnea
