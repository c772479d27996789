#pragma once

// Run-set summaries in rank-pick form and the paired two-tailed t-test.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cnea {

/// Final error of a run: f_best - f_star.
constexpr double error_value(double f_best, double f_star) noexcept { return f_best - f_star; }

struct RunSummary {
    std::vector<double> sorted_errors;
    /// 1-based ranks of best, ~23rd pct, median, ~73rd pct, worst.
    std::array<std::size_t, 5> ranks{};
    std::array<double, 5> picks{};
    double mean = 0.0;
    double std = 0.0; // sample (n - 1); 0 for a single run

    double best() const noexcept { return picks[0]; }
    double median() const noexcept { return picks[2]; }
    double worst() const noexcept { return picks[4]; }
};

/// Ranks {1, ceil(0.233 n), ceil(0.5 n), ceil(0.733 n), n}; {1,7,15,22,30} at n = 30.
std::array<std::size_t, 5> pick_ranks(std::size_t n);

/// Throws std::invalid_argument for an empty list.
RunSummary summarize(std::span<const double> errors);

/// "1st", "7th", "22nd", ...
std::string ordinal(std::size_t n);

/// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_tailed(double t, double df);

struct TTestResult {
    double t_statistic = 0.0;
    std::size_t degrees_of_freedom = 0;
    double p_value = 1.0;
};

/// Paired two-tailed t-test on d_i = a_i - b_i with df = n - 1.
/// Throws std::invalid_argument on length mismatch or n < 2.
TTestResult paired_ttest(std::span<const double> a, std::span<const double> b);

} // namespace cnea
