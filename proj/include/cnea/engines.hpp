#pragma once

// Run loops for the counter-niching EA and the four baselines (standard
// EA, self-organized-criticality EA, cellular EA, diversity-guided EA).

#include "cnea/benchmarks.hpp"
#include "cnea/core.hpp"
#include "cnea/informed.hpp"
#include "cnea/niching.hpp"
#include "cnea/operators.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cnea {

enum class Algorithm { cnea, sea, socea, cea, dgea };

inline constexpr std::array<Algorithm, 5> kAllAlgorithms = {Algorithm::cnea, Algorithm::sea, Algorithm::socea,
                                                            Algorithm::cea, Algorithm::dgea};

std::string_view to_string(Algorithm a) noexcept;
Algorithm algorithm_from_string(std::string_view name);

/// `printed`: 1 + sqrt(t + 1). `annealed`: 1 / sqrt(t + 1).
enum class SeaVariance { printed, annealed };

enum class DgeaMode { exploitation, exploration };
std::string_view to_string(DgeaMode m) noexcept;

/// Hysteresis switch: exploration below d_low, exploitation above d_high,
/// otherwise unchanged.
DgeaMode next_mode(DgeaMode previous, double diversity, double d_low, double d_high) noexcept;

/// Mutation variance of the standard EA when producing generation t+1.
double sea_variance(SeaVariance schedule, std::size_t t);

struct EngineConfig {
    Algorithm algo = Algorithm::cnea;
    std::size_t population = 300;
    std::size_t generations = 500;
    std::uint64_t seed = 1;
    std::size_t elitism = 1;

    // Counter-niching EA.
    InformedOpConfig informed;
    GridConfig grid;

    // Baselines.
    double p_crossover = 0.9;
    double p_genome_mutation = 0.75;
    SeaVariance sea_schedule = SeaVariance::printed;
    double socea_alpha = 10.0;
    double cea_alpha = 10.0;
    double dgea_alpha = 1.0;
    PowerLaw pow;
    std::size_t cea_rows = 20;
    std::size_t cea_cols = 20;
    double d_low = 5e-6;
    double d_high = 0.25;

    /// Records cumulative wall time per generation. Off by default so traces
    /// stay byte-reproducible.
    bool record_timing = false;

    /// Population size and generation budget of the reference setup for `algo`
    /// at dimension `dim`.
    static EngineConfig defaults(Algorithm algo, std::size_t dim);
    void validate() const;
};

/// CNEA: 500 / 1000 / 2000 generations for up to 20 / 50 / more dimensions.
/// Baselines: 50 times the dimension.
std::size_t default_generations(Algorithm algo, std::size_t dim);

struct GenerationRecord {
    std::size_t generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    double diversity = 0.0;
    std::optional<DgeaMode> mode;
    std::size_t victims = 0;
    std::size_t replacements = 0;
    std::size_t fallbacks = 0;
    double wall_ms = 0.0;
};

enum class Termination { budget, stagnation, cap };
std::string_view to_string(Termination t) noexcept;

struct RunTrace {
    Algorithm algo = Algorithm::cnea;
    std::vector<GenerationRecord> records;
    Individual best;
    Termination termination = Termination::budget;

    const GenerationRecord& last() const { return records.back(); }
    std::vector<double> best_series() const;
};

/// Stepwise engine. initialize() creates and evaluates generation 0;
/// every step() produces the next generation and appends a record.
class Engine {
public:
    Engine(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng);
    virtual ~Engine() = default;
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    void initialize();
    void step();

    std::size_t generation() const noexcept { return pop_.generation; }
    const Population& population() const noexcept { return pop_; }
    const RunTrace& trace() const noexcept { return trace_; }
    RunTrace take_trace() { return std::move(trace_); }
    const EngineConfig& config() const noexcept { return cfg_; }

protected:
    struct StepInfo {
        std::optional<DgeaMode> mode;
        std::size_t victims = 0;
        std::size_t replacements = 0;
        std::size_t fallbacks = 0;
    };

    virtual void on_initialized() {}
    /// Replaces pop_ with the next generation (generation counter excluded).
    virtual StepInfo advance() = 0;
    virtual std::optional<DgeaMode> initial_mode() const { return std::nullopt; }

    /// Indices of the `count` best members, best first (stable on ties).
    std::vector<std::size_t> elite_indices(const Population& pop, std::size_t count) const;
    void evaluate(std::vector<Individual>& members) const;

    EngineConfig cfg_;
    BenchmarkFn fn_;
    RngStream& rng_;
    Population pop_;
    RunTrace trace_;

private:
    void record(const StepInfo& info);

    std::chrono::steady_clock::time_point start_;
};

/// Called once per generation by the counter-niching engine with one JSON
/// line per dense region plus one line of operator counters.
using RegionSink = std::function<void(const std::string& json_line)>;

std::unique_ptr<Engine> make_engine(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng,
                                    RegionSink region_sink = {});

/// Runs cfg.generations generations of the configured algorithm.
RunTrace run(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng, RegionSink region_sink = {});

RunTrace run_cnea(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng);
RunTrace run_sea(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng);
RunTrace run_socea(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng);
RunTrace run_cea(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng);
RunTrace run_dgea(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng);

/// Toroidal von Neumann neighbours of (row, col): up, down, left, right.
std::array<std::pair<std::size_t, std::size_t>, 4> torus_neighbors(std::size_t row, std::size_t col,
                                                                  std::size_t rows, std::size_t cols);

/// Survivor selection for the counter-niching engine: the `elites` best of
/// parents and offspring survive, the remaining slots are filled by binary
/// tournament over the rest of the union.
Population elitist_survivors(const Population& parents, const Population& offspring, std::size_t elites,
                             RngStream& rng);

} // namespace cnea
