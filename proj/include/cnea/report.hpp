#pragma once

// Text, CSV and JSON renderings of run summaries, t-test grids and
// diversity profiles.

#include "cnea/harness.hpp"
#include "cnea/stats.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace cnea {

/// Rank rows (1st (Best), 7th, 15th (Median), 22nd, 30th (Worst) for 30
/// runs) followed by Mean and Std, one column per cell. Cells with
/// different run counts are rendered as separate tables.
std::string render_summary_table(std::span<const CellResult> cells);
nlohmann::json summary_json(std::span<const CellResult> cells);
std::string render_summary_csv(std::span<const CellResult> cells);

struct TTestRow {
    std::string function;
    std::size_t dim = 0;
    std::string algo_a;
    std::string algo_b;
    TTestResult result;
};

/// Pairs the two cells run by run. Throws std::invalid_argument when the
/// run counts or seeds differ.
TTestRow ttest_cells(const CellResult& a, const CellResult& b);

/// `reference` against every other algorithm for each (function, dim)
/// present in `cells`.
std::vector<TTestRow> ttest_grid(std::span<const CellResult> cells, const std::string& reference);

inline constexpr const char* kTTestHeader = "function,dim,algo_a,algo_b,t,df,p";

std::string render_ttest_table(std::span<const TTestRow> rows);
std::string render_ttest_csv(std::span<const TTestRow> rows);
nlohmann::json ttest_json(std::span<const TTestRow> rows);

struct DiversityRow {
    std::string algo;
    std::string function;
    std::size_t dim = 0;
    std::size_t runs = 0;
    std::size_t runs_counted = 0; // runs with at least one qualifying generation
    std::optional<double> average_diversity;
};

/// Recomputes diversity profiles from the run traces of one cell directory.
/// Burn-in is `burn_in_fraction` of each trace's final generation.
DiversityRow diversity_for_cell(const std::filesystem::path& cell_dir, const CellResult& cell,
                                double burn_in_fraction);
std::vector<DiversityRow> diversity_report(const std::filesystem::path& root, double burn_in_fraction);

/// One row per (algo, function), one column per dimension.
std::string render_diversity_table(std::span<const DiversityRow> rows);
std::string render_diversity_csv(std::span<const DiversityRow> rows);
nlohmann::json diversity_json(std::span<const DiversityRow> rows);

/// Engineering notation used in the text tables (e.g. 1.08E-61, 0.633).
std::string format_table_value(double v);

} // namespace cnea
