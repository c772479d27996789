#pragma once

// Experiment orchestration: stagnation runs, diversity profiling, timing,
// and seeded experiment matrices with CSV/JSON persistence.

#include "cnea/benchmarks.hpp"
#include "cnea/config.hpp"
#include "cnea/engines.hpp"
#include "cnea/stats.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cnea {

struct StagnationRule {
    std::size_t window = 500;
};

/// Smallest generation g >= window such that best fitness did not strictly
/// improve at any generation in (g - window, g]. `best` is indexed by
/// generation.
std::optional<std::size_t> detect_stagnation(std::span<const double> best, const StagnationRule& rule);
std::optional<std::size_t> detect_stagnation(const RunTrace& trace, const StagnationRule& rule);

inline constexpr std::size_t kDefaultStagnationCap = 50000;

/// Steps an initialized engine until stagnation or `cap` generations.
RunTrace run_to_stagnation(Engine& engine, const StagnationRule& rule, std::size_t cap = kDefaultStagnationCap);
RunTrace run_to_stagnation(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng,
                           const StagnationRule& rule, std::size_t cap = kDefaultStagnationCap);

struct DiversityProfile {
    std::optional<double> average_diversity; // empty when nothing qualified
    std::size_t generations_counted = 0;
    std::size_t burn_in = 0;
};

/// 5% of the generation budget.
std::size_t default_burn_in(std::size_t budget);

/// Mean diversity over generations g > burn_in whose mean fitness strictly
/// improved on generation g - 1.
DiversityProfile diversity_profile(const RunTrace& trace, std::size_t burn_in);

struct TimedRun {
    RunTrace trace;
    double elapsed_ms = 0.0;
};

/// Wall-clock time around the run loop only.
TimedRun timed_run(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng);

enum class BudgetMode { fixed, stagnation };

struct ExperimentMatrix {
    std::vector<std::string> algos{"cnea"};
    std::vector<std::string> functions{"ackley"};
    std::vector<std::size_t> dims{20};
    std::size_t runs_per_cell = 30;
    std::uint64_t seed_base = 1;
    std::filesystem::path output_dir = "results";
    BudgetMode budget = BudgetMode::fixed;
    std::size_t generations = 0; // 0: reference budget per algorithm and dimension
    std::size_t population = 0; // 0: reference population per algorithm
    StagnationRule stagnation;
    std::size_t stagnation_cap = kDefaultStagnationCap;
    std::size_t workers = 0; // 0: all available processors
    bool timing = false;
    double burn_in_fraction = 0.05;
    std::optional<double> schwefel12_lower;
    std::optional<double> schwefel12_upper;
    KeyValues engine_overrides;

    /// Seed of run `run_index` in every cell: seed_base + run_index.
    std::uint64_t seed_for(std::size_t run_index) const noexcept { return seed_base + run_index; }

    /// Throws std::invalid_argument for unknown keys or malformed values.
    static ExperimentMatrix from_key_values(const KeyValues& kv);
    static ExperimentMatrix from_file(const std::filesystem::path& path);
};

/// Builds a benchmark, honouring the matrix's Schwefel 1.2 bound override.
BenchmarkFn make_function(const ExperimentMatrix& m, const std::string& name, std::size_t dim);

/// Engine configuration for one cell of the matrix.
EngineConfig make_engine_config(const ExperimentMatrix& m, Algorithm algo, std::size_t dim);

struct CellResult {
    std::string algo;
    std::string function;
    std::size_t dim = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> errors;
    std::vector<double> wall_ms;
    std::vector<std::optional<std::size_t>> stagnation_gens;
    std::vector<std::optional<double>> diversity_averages;
    std::vector<std::size_t> final_generations;
    std::vector<std::string> terminations;
    std::optional<std::string> error; // set when the cell failed

    std::string id() const;
    bool ok() const noexcept { return !error.has_value(); }
    RunSummary summary() const { return summarize(errors); }
    double mean_wall_ms() const;
    /// Mean of the detected stagnation generations; NaN when none.
    double stagnation_gen_mean() const;
};

struct MatrixResult {
    std::vector<CellResult> cells;
};

/// Runs every (algo, function, dim, run) combination. Per-cell failures are
/// recorded on that cell; the other cells still complete.
MatrixResult run_matrix(const ExperimentMatrix& matrix);

inline constexpr const char* kSummaryHeader =
    "algo,function,dim,runs,best,p23,median,p73,worst,mean,std,mean_wall_ms,stagnation_gen_mean";

std::string summary_csv_row(const CellResult& cell);

/// Cell directory name: <algo>__<function>__<dim>.
std::filesystem::path cell_directory(const std::filesystem::path& root, const CellResult& cell);

void write_cell(const std::filesystem::path& root, const CellResult& cell);
CellResult read_cell(const std::filesystem::path& cell_dir);
/// Every cell.json under `root`, sorted by directory name.
std::vector<CellResult> load_cells(const std::filesystem::path& root);

} // namespace cnea
