#include "cnea/harness.hpp"

#include "cnea/trace_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cnea {

std::optional<std::size_t> detect_stagnation(std::span<const double> best, const StagnationRule& rule) {
    if (rule.window < 1) throw std::invalid_argument("stagnation window must be >= 1");
    // Run of consecutive non-improving generations ending at g.
    std::size_t flat = 0;
    for (std::size_t g = 1; g < best.size(); ++g) {
        flat = best[g] < best[g - 1] ? 0 : flat + 1;
        if (flat >= rule.window) return g;
    }
    return std::nullopt;
}

std::optional<std::size_t> detect_stagnation(const RunTrace& trace, const StagnationRule& rule) {
    const auto best = trace.best_series();
    return detect_stagnation(best, rule);
}

RunTrace run_to_stagnation(Engine& engine, const StagnationRule& rule, std::size_t cap) {
    if (rule.window < 1) throw std::invalid_argument("stagnation window must be >= 1");
    if (engine.trace().records.empty()) engine.initialize();
    std::size_t flat = 0;
    Termination why = Termination::cap;
    while (engine.generation() < cap) {
        engine.step();
        const auto& recs = engine.trace().records;
        const auto n = recs.size();
        flat = recs[n - 1].best_fitness < recs[n - 2].best_fitness ? 0 : flat + 1;
        if (flat >= rule.window) {
            why = Termination::stagnation;
            break;
        }
    }
    auto trace = engine.take_trace();
    trace.termination = why;
    return trace;
}

RunTrace run_to_stagnation(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng,
                           const StagnationRule& rule, std::size_t cap) {
    auto engine = make_engine(cfg, fn, rng);
    engine->initialize();
    return run_to_stagnation(*engine, rule, cap);
}

std::size_t default_burn_in(std::size_t budget) {
    return static_cast<std::size_t>(std::floor(0.05 * static_cast<double>(budget)));
}

DiversityProfile diversity_profile(const RunTrace& trace, std::size_t burn_in) {
    DiversityProfile p;
    p.burn_in = burn_in;
    double sum = 0.0;
    for (std::size_t i = 1; i < trace.records.size(); ++i) {
        const auto& r = trace.records[i];
        if (r.generation <= burn_in) continue;
        if (!(r.mean_fitness < trace.records[i - 1].mean_fitness)) continue;
        sum += r.diversity;
        ++p.generations_counted;
    }
    if (p.generations_counted > 0) p.average_diversity = sum / static_cast<double>(p.generations_counted);
    return p;
}

TimedRun timed_run(const EngineConfig& cfg, const BenchmarkFn& fn, RngStream& rng) {
    const auto t0 = std::chrono::steady_clock::now();
    TimedRun out{run(cfg, fn, rng), 0.0};
    out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// ---------------------------------------------------------------------------

ExperimentMatrix ExperimentMatrix::from_key_values(const KeyValues& kv) {
    ExperimentMatrix m;
    for (const auto& [key, value] : kv) {
        if (key == "algos") m.algos = split_list(value);
        else if (key == "functions") m.functions = split_list(value);
        else if (key == "dims") {
            m.dims.clear();
            for (const auto& d : split_list(value)) m.dims.push_back(parse_size(key, d));
        }
        else if (key == "runs") m.runs_per_cell = parse_size(key, value);
        else if (key == "seed_base") m.seed_base = parse_u64(key, value);
        else if (key == "output_dir") m.output_dir = value;
        else if (key == "budget") {
            if (value == "fixed") m.budget = BudgetMode::fixed;
            else if (value == "stagnation") m.budget = BudgetMode::stagnation;
            else throw std::invalid_argument("budget must be fixed or stagnation, got '" + value + "'");
        }
        else if (key == "generations") m.generations = parse_size(key, value);
        else if (key == "population") m.population = parse_size(key, value);
        else if (key == "stagnation_window") m.stagnation.window = parse_size(key, value);
        else if (key == "stagnation_cap") m.stagnation_cap = parse_size(key, value);
        else if (key == "workers") m.workers = parse_size(key, value);
        else if (key == "timing") m.timing = parse_bool(key, value);
        else if (key == "burn_in_fraction") m.burn_in_fraction = parse_double(key, value);
        else if (key == "schwefel12_lower") m.schwefel12_lower = parse_double(key, value);
        else if (key == "schwefel12_upper") m.schwefel12_upper = parse_double(key, value);
        else {
            EngineConfig probe;
            if (!apply_engine_key(probe, key, value)) throw std::invalid_argument("unknown config key '" + key + "'");
            m.engine_overrides.emplace_back(key, value);
        }
    }
    if (m.algos.empty() || m.functions.empty() || m.dims.empty())
        throw std::invalid_argument("algos, functions and dims must each list at least one entry");
    if (m.runs_per_cell < 1) throw std::invalid_argument("runs must be >= 1");
    if (m.stagnation.window < 1) throw std::invalid_argument("stagnation_window must be >= 1");
    if (!(m.burn_in_fraction >= 0.0 && m.burn_in_fraction < 1.0))
        throw std::invalid_argument("burn_in_fraction must lie in [0, 1)");
    return m;
}

ExperimentMatrix ExperimentMatrix::from_file(const std::filesystem::path& path) {
    return from_key_values(parse_key_values(path));
}

BenchmarkFn make_function(const ExperimentMatrix& m, const std::string& name, std::size_t dim) {
    const auto id = function_from_string(name);
    if (id == FunctionId::schwefel12 && (m.schwefel12_lower || m.schwefel12_upper)) {
        const double b = default_bound(id);
        return BenchmarkFn::make(
            id, dim, SearchSpace::cube(dim, m.schwefel12_lower.value_or(-b), m.schwefel12_upper.value_or(b)));
    }
    return BenchmarkFn::make(id, dim);
}

EngineConfig make_engine_config(const ExperimentMatrix& m, Algorithm algo, std::size_t dim) {
    auto cfg = EngineConfig::defaults(algo, dim);
    if (m.generations > 0) cfg.generations = m.generations;
    if (m.population > 0) cfg.population = m.population;
    for (const auto& [k, v] : m.engine_overrides) apply_engine_key(cfg, k, v);
    cfg.record_timing = m.timing;
    cfg.validate();
    return cfg;
}

std::string CellResult::id() const { return algo + "__" + function + "__" + std::to_string(dim); }

double CellResult::mean_wall_ms() const {
    if (wall_ms.empty()) return 0.0;
    double s = 0.0;
    for (double w : wall_ms) s += w;
    return s / static_cast<double>(wall_ms.size());
}

double CellResult::stagnation_gen_mean() const {
    double s = 0.0;
    std::size_t n = 0;
    for (const auto& g : stagnation_gens)
        if (g) {
            s += static_cast<double>(*g);
            ++n;
        }
    return n == 0 ? std::numeric_limits<double>::quiet_NaN() : s / static_cast<double>(n);
}

std::filesystem::path cell_directory(const std::filesystem::path& root, const CellResult& cell) {
    return root / cell.id();
}

namespace {

std::filesystem::path run_file(const std::filesystem::path& dir, std::size_t run_index) {
    char name[32];
    std::snprintf(name, sizeof name, "run_%03zu.csv", run_index);
    return dir / name;
}

struct RunSlot {
    double error = 0.0;
    double wall_ms = 0.0;
    std::optional<std::size_t> stagnation;
    std::optional<double> diversity;
    std::size_t final_generation = 0;
    std::string termination;
    std::optional<std::string> failure;
};

struct PreparedCell {
    Algorithm algo{};
    std::optional<BenchmarkFn> fn;
    EngineConfig cfg;
};

} // namespace

MatrixResult run_matrix(const ExperimentMatrix& matrix) {
    MatrixResult result;
    std::vector<PreparedCell> prepared;
    for (const auto& a : matrix.algos)
        for (const auto& f : matrix.functions)
            for (auto d : matrix.dims) {
                CellResult cell;
                cell.algo = a;
                cell.function = f;
                cell.dim = d;
                PreparedCell p;
                try {
                    p.algo = algorithm_from_string(a);
                    p.fn = make_function(matrix, f, d);
                    p.cfg = make_engine_config(matrix, p.algo, d);
                    std::filesystem::create_directories(cell_directory(matrix.output_dir, cell));
                } catch (const std::exception& e) {
                    cell.error = e.what();
                }
                result.cells.push_back(std::move(cell));
                prepared.push_back(std::move(p));
            }

    struct Task {
        std::size_t cell;
        std::size_t run;
    };
    std::vector<Task> tasks;
    for (std::size_t c = 0; c < result.cells.size(); ++c)
        if (result.cells[c].ok())
            for (std::size_t r = 0; r < matrix.runs_per_cell; ++r) tasks.push_back({c, r});
    std::vector<RunSlot> slots(tasks.size());

    int workers = static_cast<int>(matrix.workers);
#ifdef _OPENMP
    if (workers <= 0) workers = omp_get_num_procs();
#endif
    if (workers <= 0) workers = 1;

    const auto n_tasks = static_cast<std::int64_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t t = 0; t < n_tasks; ++t) {
        const auto& task = tasks[static_cast<std::size_t>(t)];
        auto& slot = slots[static_cast<std::size_t>(t)];
        const auto& cell = result.cells[task.cell];
        const auto& prep = prepared[task.cell];
        try {
            RngStream rng(matrix.seed_for(task.run));
            RunTrace trace;
            const auto t0 = std::chrono::steady_clock::now();
            if (matrix.budget == BudgetMode::fixed)
                trace = run(prep.cfg, *prep.fn, rng);
            else
                trace = run_to_stagnation(prep.cfg, *prep.fn, rng, matrix.stagnation, matrix.stagnation_cap);
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            slot.wall_ms = matrix.timing ? ms : 0.0;
            slot.error = error_value(trace.best.f(), prep.fn->optimum_value());
            slot.stagnation = detect_stagnation(trace, matrix.stagnation);
            const auto burn = static_cast<std::size_t>(
                std::floor(matrix.burn_in_fraction * static_cast<double>(prep.cfg.generations)));
            slot.diversity = diversity_profile(trace, burn).average_diversity;
            slot.final_generation = trace.last().generation;
            slot.termination = std::string(to_string(trace.termination));
            write_trace_csv(run_file(cell_directory(matrix.output_dir, cell), task.run), trace);
        } catch (const std::exception& e) {
            slot.failure = e.what();
        }
    }

    for (std::size_t t = 0; t < tasks.size(); ++t) {
        auto& cell = result.cells[tasks[t].cell];
        auto& slot = slots[t];
        if (slot.failure && !cell.error) cell.error = "run " + std::to_string(tasks[t].run) + ": " + *slot.failure;
        cell.seeds.push_back(matrix.seed_for(tasks[t].run));
        cell.errors.push_back(slot.error);
        cell.wall_ms.push_back(slot.wall_ms);
        cell.stagnation_gens.push_back(slot.stagnation);
        cell.diversity_averages.push_back(slot.diversity);
        cell.final_generations.push_back(slot.final_generation);
        cell.terminations.push_back(slot.termination);
    }

    std::filesystem::create_directories(matrix.output_dir);
    std::ofstream all(matrix.output_dir / "summary.csv", std::ios::binary);
    all << kSummaryHeader << '\n';
    for (auto& cell : result.cells) {
        if (!cell.ok()) continue;
        try {
            write_cell(matrix.output_dir, cell);
            all << summary_csv_row(cell) << '\n';
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
    }
    return result;
}

std::string summary_csv_row(const CellResult& cell) {
    const auto s = cell.summary();
    std::ostringstream os;
    os << cell.algo << ',' << cell.function << ',' << cell.dim << ',' << cell.errors.size();
    for (double v : s.picks) os << ',' << format_real(v);
    os << ',' << format_real(s.mean) << ',' << format_real(s.std) << ',' << format_real(cell.mean_wall_ms()) << ','
       << format_real(cell.stagnation_gen_mean());
    return os.str();
}

void write_cell(const std::filesystem::path& root, const CellResult& cell) {
    const auto dir = cell_directory(root, cell);
    std::filesystem::create_directories(dir);
    {
        std::ofstream os(dir / "summary.csv", std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + (dir / "summary.csv").string());
        os << kSummaryHeader << '\n' << summary_csv_row(cell) << '\n';
    }
    nlohmann::json j;
    j["algo"] = cell.algo;
    j["function"] = cell.function;
    j["dim"] = cell.dim;
    j["runs"] = cell.errors.size();
    j["seeds"] = cell.seeds;
    j["errors"] = cell.errors;
    j["wall_ms"] = cell.wall_ms;
    auto& stag = j["stagnation_gens"] = nlohmann::json::array();
    for (const auto& g : cell.stagnation_gens) stag.push_back(g ? nlohmann::json(*g) : nlohmann::json(nullptr));
    auto& div = j["diversity_averages"] = nlohmann::json::array();
    for (const auto& d : cell.diversity_averages) div.push_back(d ? nlohmann::json(*d) : nlohmann::json(nullptr));
    j["final_generations"] = cell.final_generations;
    j["terminations"] = cell.terminations;
    std::ofstream os(dir / "cell.json", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir / "cell.json").string());
    os << j.dump(2) << '\n';
}

CellResult read_cell(const std::filesystem::path& cell_dir) {
    std::ifstream is(cell_dir / "cell.json");
    if (!is) throw std::runtime_error("missing cell.json in " + cell_dir.string());
    nlohmann::json j;
    try {
        is >> j;
        CellResult c;
        c.algo = j.at("algo").get<std::string>();
        c.function = j.at("function").get<std::string>();
        c.dim = j.at("dim").get<std::size_t>();
        c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        c.errors = j.at("errors").get<std::vector<double>>();
        c.wall_ms = j.at("wall_ms").get<std::vector<double>>();
        for (const auto& g : j.at("stagnation_gens"))
            c.stagnation_gens.push_back(g.is_null() ? std::nullopt : std::optional<std::size_t>(g.get<std::size_t>()));
        for (const auto& d : j.at("diversity_averages"))
            c.diversity_averages.push_back(d.is_null() ? std::nullopt : std::optional<double>(d.get<double>()));
        c.final_generations = j.at("final_generations").get<std::vector<std::size_t>>();
        c.terminations = j.at("terminations").get<std::vector<std::string>>();
        if (c.errors.empty()) throw std::runtime_error("cell has no runs");
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed cell.json in " + cell_dir.string() + ": " + e.what());
    }
}

std::vector<CellResult> load_cells(const std::filesystem::path& root) {
    if (!std::filesystem::is_directory(root)) throw std::runtime_error("not a directory: " + root.string());
    std::vector<std::filesystem::path> dirs;
    if (std::filesystem::exists(root / "cell.json")) dirs.push_back(root);
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root))
        if (entry.is_regular_file() && entry.path().filename() == "cell.json" && entry.path().parent_path() != root)
            dirs.push_back(entry.path().parent_path());
    std::sort(dirs.begin(), dirs.end());
    std::vector<CellResult> cells;
    for (const auto& d : dirs) cells.push_back(read_cell(d));
    return cells;
}

} // namespace cnea
