#include "cnea/engines.hpp"

#include "cnea/diversity.hpp"
#include "cnea/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace cnea {

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::cnea: return "cnea";
    case Algorithm::sea: return "sea";
    case Algorithm::socea: return "socea";
    case Algorithm::cea: return "cea";
    case Algorithm::dgea: return "dgea";
    }
    return "?";
}

Algorithm algorithm_from_string(std::string_view name) {
    for (auto a : kAllAlgorithms)
        if (to_string(a) == name) return a;
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(DgeaMode m) noexcept {
    return m == DgeaMode::exploitation ? "exploit" : "explore";
}

std::string_view to_string(Termination t) noexcept {
    switch (t) {
    case Termination::budget: return "budget";
    case Termination::stagnation: return "stagnation";
    case Termination::cap: return "cap";
    }
    return "?";
}

DgeaMode next_mode(DgeaMode previous, double diversity, double d_low, double d_high) noexcept {
    if (diversity < d_low) return DgeaMode::exploration;
    if (diversity > d_high) return DgeaMode::exploitation;
    return previous;
}

double sea_variance(SeaVariance schedule, std::size_t t) {
    const double root = std::sqrt(static_cast<double>(t) + 1.0);
    return schedule == SeaVariance::printed ? 1.0 + root : 1.0 / root;
}

std::size_t default_generations(Algorithm algo, std::size_t dim) {
    if (algo == Algorithm::cnea) {
        if (dim <= 20) return 500;
        if (dim <= 50) return 1000;
        return 2000;
    }
    return 50 * dim;
}

EngineConfig EngineConfig::defaults(Algorithm algo, std::size_t dim) {
    EngineConfig cfg;
    cfg.algo = algo;
    cfg.population = algo == Algorithm::cnea ? 300 : 400;
    cfg.generations = default_generations(algo, dim);
    return cfg;
}

void EngineConfig::validate() const {
    if (population < 2) throw std::invalid_argument("population must be at least 2");
    if (elitism < 1 || elitism >= population)
        throw std::invalid_argument("elitism must lie in [1, population)");
    informed.validate();
    grid.validate();
    pow.validate();
    if (!(p_crossover >= 0.0 && p_crossover <= 1.0)) throw std::invalid_argument("p_crossover must lie in [0, 1]");
    if (!(p_genome_mutation >= 0.0 && p_genome_mutation <= 1.0))
        throw std::invalid_argument("p_genome_mutation must lie in [0, 1]");
    if (!(socea_alpha > 0.0 && cea_alpha > 0.0 && dgea_alpha > 0.0))
        throw std::invalid_argument("power-law alphas must be positive");
    if (!(d_low >= 0.0 && d_low < d_high)) throw std::invalid_argument("diversity bounds need 0 <= d_low < d_high");
    if (algo == Algorithm::cea && cea_rows * cea_cols != population)
        throw std::invalid_argument("cellular grid " + std::to_string(cea_rows) + "x" + std::to_string(cea_cols) +
                                    " does not hold a population of " + std::to_string(population));
}

std::vector<double> RunTrace::best_series() const {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.best_fitness);
    return out;
}

std::array<std::pair<std::size_t, std::size_t>, 4> torus_neighbors(std::size_t row, std::size_t col,
                                                                  std::size_t rows, std::size_t cols) {
    return {{{(row + rows - 1) % rows, col},
             {(row + 1) % rows, col},
             {row, (col + cols - 1) % cols},
             {row, (col + 1) % cols}}};
}

// ---------------------------------------------------------------------------

Engine::Engine(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng) : cfg_(cfg), fn_(fn), rng_(rng) {
    cfg_.validate();
    trace_.algo = cfg_.algo;
}

void Engine::initialize() {
    start_ = std::chrono::steady_clock::now();
    pop_ = Population{};
    pop_.members.reserve(cfg_.population);
    for (std::size_t i = 0; i < cfg_.population; ++i)
        pop_.members.push_back(Individual{random_genome(fn_.space(), rng_), std::nullopt});
    evaluate(pop_.members);
    trace_.records.clear();
    trace_.best = pop_[pop_.best_index()];
    on_initialized();
    StepInfo info;
    info.mode = initial_mode();
    record(info);
}

void Engine::step() {
    if (trace_.records.empty()) throw std::logic_error("engine stepped before initialize()");
    const auto info = advance();
    ++pop_.generation;
    record(info);
}

void Engine::record(const StepInfo& info) {
    GenerationRecord r;
    r.generation = pop_.generation;
    const auto bi = pop_.best_index();
    r.best_fitness = pop_[bi].f();
    r.mean_fitness = pop_.mean_fitness();
    r.diversity = distance_to_average(pop_, fn_.space());
    r.mode = info.mode;
    r.victims = info.victims;
    r.replacements = info.replacements;
    r.fallbacks = info.fallbacks;
    if (cfg_.record_timing)
        r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    if (r.best_fitness < trace_.best.f()) trace_.best = pop_[bi];
    trace_.records.push_back(r);
}

std::vector<std::size_t> Engine::elite_indices(const Population& pop, std::size_t count) const {
    std::vector<std::size_t> idx(pop.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    count = std::min(count, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                          if (pop[a].f() != pop[b].f()) return pop[a].f() < pop[b].f();
                          return a < b;
                      });
    idx.resize(count);
    return idx;
}

void Engine::evaluate(std::vector<Individual>& members) const { kernels::evaluate(members, fn_); }

Population elitist_survivors(const Population& parents, const Population& offspring, std::size_t elites,
                             RngStream& rng) {
    std::vector<Individual> pool;
    pool.reserve(parents.size() + offspring.size());
    pool.insert(pool.end(), parents.members.begin(), parents.members.end());
    pool.insert(pool.end(), offspring.members.begin(), offspring.members.end());
    const std::size_t n = parents.size();
    elites = std::min(elites, n);

    std::vector<std::size_t> order(pool.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pool[a].f() < pool[b].f(); });

    Population next;
    next.generation = parents.generation;
    next.members.reserve(n);
    for (std::size_t k = 0; k < elites; ++k) next.members.push_back(pool[order[k]]);

    std::vector<Individual> rest;
    rest.reserve(pool.size() - elites);
    std::vector<bool> is_elite(pool.size(), false);
    for (std::size_t k = 0; k < elites; ++k) is_elite[order[k]] = true;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (!is_elite[i]) rest.push_back(pool[i]);
    while (next.members.size() < n) next.members.push_back(rest[binary_tournament(rest, rng)]);
    return next;
}

// ---------------------------------------------------------------------------

namespace {

class CounterNichingEngine final : public Engine {
public:
    CounterNichingEngine(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng, RegionSink sink)
        : Engine(cfg, fn, rng), sink_(std::move(sink)), projection_(KeyProjection::identity(fn.dim())) {}

private:
    void on_initialized() override { projection_ = KeyProjection::draw(fn_.dim(), cfg_.grid, rng_); }

    StepInfo advance() override {
        const auto& space = fn_.space();
        const auto grid = build_grid(pop_, space, cfg_.grid.bins, projection_);
        const auto regions = high_density_regions(grid, pop_, cfg_.grid.dense_fraction);
        const auto victims = detect_victims(regions, pop_, cfg_.informed);

        archive_.clear();
        const auto stats = informed_mutation(pop_, victims, space, grid, fn_, archive_, rng_, cfg_.informed);
        const auto offspring = regular_ops(pop_, space, fn_, rng_, cfg_.informed);
        pop_.members = elitist_survivors(pop_, offspring, cfg_.elitism, rng_).members;

        if (sink_) {
            for (const auto& r : regions) sink_(region_json_line(pop_.generation, r));
            nlohmann::json j;
            j["generation"] = pop_.generation;
            j["victims"] = stats.victims;
            j["replaced"] = stats.replaced;
            j["fallbacks"] = stats.fallbacks;
            sink_(j.dump());
        }
        StepInfo info;
        info.victims = stats.victims;
        info.replacements = stats.replaced;
        info.fallbacks = stats.fallbacks;
        return info;
    }

    RegionSink sink_;
    KeyProjection projection_;
    MemoryArchive archive_;
};

/// Generational EA with whole-genome Gaussian mutation. The standard EA
/// and the SOC EA differ only in how the mutation variance is drawn.
class GenerationalEngine final : public Engine {
public:
    using Engine::Engine;

private:
    double variance() {
        if (cfg_.algo == Algorithm::sea) return sea_variance(cfg_.sea_schedule, pop_.generation);
        return pow_sample(cfg_.socea_alpha, rng_, cfg_.pow);
    }

    StepInfo advance() override {
        const auto elites = elite_indices(pop_, cfg_.elitism);
        std::vector<Individual> next;
        next.reserve(pop_.size());
        for (auto e : elites) next.push_back(pop_[e]);
        std::vector<Individual> children;
        children.reserve(pop_.size() - elites.size());
        while (next.size() + children.size() < pop_.size()) {
            const auto& a = pop_[binary_tournament(pop_.members, rng_)];
            const auto& b = pop_[binary_tournament(pop_.members, rng_)];
            Genome child = rng_.bernoulli(cfg_.p_crossover) ? arithmetic_crossover(a.genome, b.genome, rng_)
                                                            : a.genome;
            if (rng_.bernoulli(cfg_.p_genome_mutation))
                child = gaussian_mutate(child, variance(), 1.0, fn_.space(), rng_);
            children.push_back(Individual{std::move(child), std::nullopt});
        }
        evaluate(children);
        next.insert(next.end(), std::make_move_iterator(children.begin()), std::make_move_iterator(children.end()));
        pop_.members = std::move(next);
        return {};
    }
};

/// Cellular EA on a torus with synchronous updates: every cell mates with
/// a random von Neumann neighbour of the previous grid and the child
/// replaces the cell only when strictly better.
class CellularEngine final : public Engine {
public:
    using Engine::Engine;

private:
    StepInfo advance() override {
        const std::size_t rows = cfg_.cea_rows, cols = cfg_.cea_cols;
        std::vector<Individual> children;
        children.reserve(pop_.size());
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                const auto& center = pop_[r * cols + c];
                const auto nbrs = torus_neighbors(r, c, rows, cols);
                const auto [nr, nc] = nbrs[rng_.index(nbrs.size())];
                const auto& mate = pop_[nr * cols + nc];
                Genome child = rng_.bernoulli(cfg_.p_crossover)
                                   ? arithmetic_crossover(center.genome, mate.genome, rng_)
                                   : center.genome;
                if (rng_.bernoulli(cfg_.p_genome_mutation))
                    child = gaussian_mutate(child, pow_sample(cfg_.cea_alpha, rng_, cfg_.pow), 1.0, fn_.space(),
                                            rng_);
                children.push_back(Individual{std::move(child), std::nullopt});
            }
        }
        evaluate(children);
        for (std::size_t i = 0; i < children.size(); ++i)
            if (children[i].f() < pop_[i].f()) pop_[i] = std::move(children[i]);
        return {};
    }
};

/// Diversity-guided EA: alternates between selection + crossover
/// (exploitation) and mutation only (exploration) with a hysteresis band.
class DiversityGuidedEngine final : public Engine {
public:
    using Engine::Engine;

private:
    std::optional<DgeaMode> initial_mode() const override { return DgeaMode::exploitation; }

    StepInfo advance() override {
        mode_ = next_mode(mode_, trace_.last().diversity, cfg_.d_low, cfg_.d_high);
        const auto elites = elite_indices(pop_, cfg_.elitism);
        std::vector<Individual> next;
        next.reserve(pop_.size());
        for (auto e : elites) next.push_back(pop_[e]);

        std::vector<Individual> children;
        if (mode_ == DgeaMode::exploitation) {
            while (next.size() + children.size() < pop_.size()) {
                const auto& a = pop_[binary_tournament(pop_.members, rng_)];
                const auto& b = pop_[binary_tournament(pop_.members, rng_)];
                Genome child = rng_.bernoulli(cfg_.p_crossover) ? arithmetic_crossover(a.genome, b.genome, rng_)
                                                                : a.genome;
                children.push_back(Individual{std::move(child), std::nullopt});
            }
        } else {
            std::vector<bool> is_elite(pop_.size(), false);
            for (auto e : elites) is_elite[e] = true;
            for (std::size_t i = 0; i < pop_.size(); ++i) {
                if (is_elite[i]) continue;
                children.push_back(Individual{
                    gaussian_mutate(pop_[i].genome, pow_sample(cfg_.dgea_alpha, rng_, cfg_.pow), 1.0, fn_.space(),
                                    rng_),
                    std::nullopt});
            }
        }
        evaluate(children);
        next.insert(next.end(), std::make_move_iterator(children.begin()), std::make_move_iterator(children.end()));
        pop_.members = std::move(next);
        StepInfo info;
        info.mode = mode_;
        return info;
    }

    DgeaMode mode_ = DgeaMode::exploitation;
};

RunTrace run_as(Algorithm algo, const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng) {
    if (cfg.algo != algo)
        throw std::invalid_argument("engine config names '" + std::string(to_string(cfg.algo)) +
                                    "' but run_" + std::string(to_string(algo)) + " was called");
    return run(cfg, fn, rng);
}

} // namespace

std::unique_ptr<Engine> make_engine(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng,
                                    RegionSink region_sink) {
    switch (cfg.algo) {
    case Algorithm::cnea: return std::make_unique<CounterNichingEngine>(cfg, fn, rng, std::move(region_sink));
    case Algorithm::sea:
    case Algorithm::socea: return std::make_unique<GenerationalEngine>(cfg, fn, rng);
    case Algorithm::cea: return std::make_unique<CellularEngine>(cfg, fn, rng);
    case Algorithm::dgea: return std::make_unique<DiversityGuidedEngine>(cfg, fn, rng);
    }
    throw std::invalid_argument("unknown algorithm");
}

RunTrace run(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng, RegionSink region_sink) {
    auto engine = make_engine(cfg, fn, rng, std::move(region_sink));
    engine->initialize();
    for (std::size_t g = 0; g < cfg.generations; ++g) engine->step();
    auto trace = engine->take_trace();
    trace.termination = Termination::budget;
    return trace;
}

RunTrace run_cnea(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng) {
    return run_as(Algorithm::cnea, cfg, fn, rng);
}
RunTrace run_sea(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng) {
    return run_as(Algorithm::sea, cfg, fn, rng);
}
RunTrace run_socea(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng) {
    return run_as(Algorithm::socea, cfg, fn, rng);
}
RunTrace run_cea(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng) {
    return run_as(Algorithm::cea, cfg, fn, rng);
}
RunTrace run_dgea(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng) {
    return run_as(Algorithm::dgea, cfg, fn, rng);
}

} // namespace cnea
