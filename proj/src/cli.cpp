#include "cnea/cli.hpp"

#include "cnea/benchmarks.hpp"
#include "cnea/config.hpp"
#include "cnea/engines.hpp"
#include "cnea/harness.hpp"
#include "cnea/report.hpp"
#include "cnea/trace_io.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace cnea::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::optional<std::filesystem::path> env_output_dir() {
    if (const char* v = std::getenv(kOutputDirEnv); v && *v) return std::filesystem::path(v);
    return std::nullopt;
}

std::string optimum_text(const BenchmarkFn& fn) {
    std::ostringstream os;
    os << "x_i = " << fn.optimum_point()[0];
    return os.str();
}

nlohmann::json function_entry(FunctionId id) {
    const auto fn = BenchmarkFn::make(id, 2);
    nlohmann::json j;
    j["name"] = to_string(id);
    j["lower"] = fn.space().lower(0);
    j["upper"] = fn.space().upper(0);
    j["optimum_coordinate"] = fn.optimum_point()[0];
    j["optimum_value"] = fn.optimum_value();
    j["even_dim_only"] = id == FunctionId::rot_rastrigin;
    return j;
}

nlohmann::json algorithm_entry(Algorithm a) {
    const auto cfg = EngineConfig::defaults(a, 20);
    nlohmann::json j;
    j["name"] = to_string(a);
    j["population"] = cfg.population;
    j["generations"] = {{"20", default_generations(a, 20)},
                        {"50", default_generations(a, 50)},
                        {"100", default_generations(a, 100)}};
    j["elitism"] = cfg.elitism;
    if (a == Algorithm::cnea) {
        j["p_crossover"] = cfg.informed.p_crossover;
        j["p_mutation"] = cfg.informed.p_mutation;
        j["grid_bins"] = cfg.grid.bins;
    } else {
        j["p_crossover"] = cfg.p_crossover;
        j["p_genome_mutation"] = cfg.p_genome_mutation;
    }
    return j;
}

int cmd_list(std::ostream& out, bool json, const std::string& only) {
    std::vector<FunctionId> ids;
    if (only.empty())
        ids.assign(kAllFunctions.begin(), kAllFunctions.end());
    else {
        try {
            ids.push_back(function_from_string(only));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }

    if (json) {
        nlohmann::json j;
        j["functions"] = nlohmann::json::array();
        for (auto id : ids) j["functions"].push_back(function_entry(id));
        if (only.empty()) {
            j["algorithms"] = nlohmann::json::array();
            for (auto a : kAllAlgorithms) j["algorithms"].push_back(algorithm_entry(a));
        }
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "Functions\n";
    for (auto id : ids) {
        const auto fn = BenchmarkFn::make(id, 2);
        out << "  " << std::left << std::setw(14) << to_string(id) << " bounds [" << fn.space().lower(0) << ", "
            << fn.space().upper(0) << "]  minimum " << fn.optimum_value() << " at " << optimum_text(fn)
            << (id == FunctionId::rot_rastrigin ? "  (even dimensions only)" : "") << '\n';
    }
    if (!only.empty()) return kExitOk;
    out << "Algorithms\n";
    for (auto a : kAllAlgorithms) {
        const auto cfg = EngineConfig::defaults(a, 20);
        out << "  " << std::left << std::setw(14) << to_string(a) << " population " << cfg.population
            << ", generations " << default_generations(a, 20) << "/" << default_generations(a, 50) << "/"
            << default_generations(a, 100) << " at 20/50/100 dims\n";
    }
    return kExitOk;
}

struct RunOptions {
    std::string algo;
    std::string function;
    std::size_t dim = 0;
    std::optional<std::size_t> generations;
    std::optional<std::size_t> population;
    std::uint64_t seed = 1;
    std::string out;
    std::vector<std::string> sets;
    std::string regions;
    bool timing = false;
    bool stagnation = false;
    std::size_t window = 500;
    std::size_t cap = kDefaultStagnationCap;
    std::optional<double> schwefel12_lower;
    std::optional<double> schwefel12_upper;
    bool json = false;
};

int cmd_run(const RunOptions& o, std::ostream& out) {
    ExperimentMatrix bounds;
    bounds.schwefel12_lower = o.schwefel12_lower;
    bounds.schwefel12_upper = o.schwefel12_upper;
    Algorithm algo;
    std::optional<BenchmarkFn> fn;
    EngineConfig cfg;
    try {
        algo = algorithm_from_string(o.algo);
        fn = make_function(bounds, o.function, o.dim);
        cfg = EngineConfig::defaults(algo, o.dim);
        if (o.generations) cfg.generations = *o.generations;
        if (o.population) cfg.population = *o.population;
        for (const auto& s : o.sets) {
            const auto [k, v] = split_assignment(s);
            if (!apply_engine_key(cfg, k, v)) throw std::invalid_argument("unknown engine key '" + k + "'");
        }
        cfg.seed = o.seed;
        cfg.record_timing = o.timing;
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    std::filesystem::path path = o.out;
    if (path.empty()) {
        const auto dir = env_output_dir().value_or("results");
        path = dir / (o.algo + "_" + o.function + "_" + std::to_string(o.dim) + "_seed" + std::to_string(o.seed) + ".csv");
    }
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());

    std::ofstream region_log;
    RegionSink sink;
    if (!o.regions.empty()) {
        region_log.open(o.regions, std::ios::binary);
        if (!region_log) throw std::runtime_error("cannot open region log " + o.regions);
        sink = [&region_log](const std::string& line) { region_log << line << '\n'; };
    }

    RngStream rng(o.seed);
    RunTrace trace;
    if (o.stagnation) {
        auto engine = make_engine(cfg, *fn, rng, sink);
        engine->initialize();
        trace = run_to_stagnation(*engine, StagnationRule{o.window}, o.cap);
    } else {
        trace = run(cfg, *fn, rng, sink);
    }
    write_trace_csv(path, trace);

    const double err = error_value(trace.best.f(), fn->optimum_value());
    if (o.json) {
        nlohmann::json j;
        j["algo"] = o.algo;
        j["function"] = o.function;
        j["dim"] = o.dim;
        j["seed"] = o.seed;
        j["generations"] = trace.last().generation;
        j["termination"] = to_string(trace.termination);
        j["final_error"] = err;
        j["trace"] = path.string();
        out << j.dump(2) << '\n';
    } else {
        out << "trace: " << path.string() << '\n';
        out << "generations: " << trace.last().generation << " (" << to_string(trace.termination) << ")\n";
        out << "final error: " << format_real(err) << '\n';
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config, std::optional<std::size_t> workers, const std::string& out_dir, bool json,
              std::ostream& out, std::ostream& err) {
    ExperimentMatrix m;
    try {
        m = ExperimentMatrix::from_file(config);
    } catch (const std::invalid_argument& e) {
        throw UsageError(config + ": " + e.what());
    }
    if (auto env = env_output_dir()) m.output_dir = *env;
    if (!out_dir.empty()) m.output_dir = out_dir;
    if (workers) m.workers = *workers;

    const auto result = run_matrix(m);
    int failed = 0;
    for (const auto& c : result.cells)
        if (!c.ok()) {
            err << "cell " << c.id() << " failed: " << *c.error << '\n';
            ++failed;
        }
    if (json)
        out << summary_json(result.cells).dump(2) << '\n';
    else
        out << render_summary_table(result.cells);
    return failed ? kExitFailure : kExitOk;
}

int emit(std::ostream& out, bool json, bool csv, const nlohmann::json& j, const std::string& c, const std::string& text) {
    if (json)
        out << j.dump(2) << '\n';
    else if (csv)
        out << c;
    else
        out << text;
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Counter-niching EA benchmark harness", args.empty() ? "cnea" : args.front()};
    app.require_subcommand(1);

    bool json = false, csv = false;

    auto* list = app.add_subcommand("list", "List benchmark functions and algorithms");
    std::string list_function;
    list->add_flag("--json", json, "Machine-readable output");
    list->add_option("--function", list_function, "Show a single function");

    RunOptions ro;
    auto* run_cmd = app.add_subcommand("run", "Execute one run and write its trace CSV");
    run_cmd->add_option("--algo", ro.algo, "cnea, sea, socea, cea or dgea")->required();
    run_cmd->add_option("--function", ro.function, "Benchmark function")->required();
    run_cmd->add_option("--dim", ro.dim, "Problem dimension")->required()->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
    run_cmd->add_option("--generations", ro.generations, "Generation budget (default: reference budget)");
    run_cmd->add_option("--population", ro.population, "Population size");
    run_cmd->add_option("--seed", ro.seed, "Random seed");
    run_cmd->add_option("--out", ro.out, "Trace CSV path");
    run_cmd->add_option("--set", ro.sets, "Engine parameter key=value (repeatable)");
    run_cmd->add_option("--regions", ro.regions, "Write per-generation dense regions as JSON lines");
    run_cmd->add_flag("--timing", ro.timing, "Record wall-clock time per generation");
    run_cmd->add_flag("--stagnation", ro.stagnation, "Run until stagnation instead of a fixed budget");
    run_cmd->add_option("--window", ro.window, "Stagnation window")->check(CLI::PositiveNumber);
    run_cmd->add_option("--cap", ro.cap, "Hard generation cap for stagnation runs");
    run_cmd->add_option("--schwefel12-lower", ro.schwefel12_lower, "Override the Schwefel 1.2 lower bound");
    run_cmd->add_option("--schwefel12-upper", ro.schwefel12_upper, "Override the Schwefel 1.2 upper bound");
    run_cmd->add_flag("--json", ro.json, "Machine-readable output");

    auto* sweep = app.add_subcommand("sweep", "Run an experiment matrix from a config file");
    std::string sweep_config, sweep_out;
    std::optional<std::size_t> workers;
    sweep->add_option("--config", sweep_config, "Matrix config file")->required()->check(CLI::ExistingFile);
    sweep->add_option("--workers", workers, "Concurrent runs (default: all processors)");
    sweep->add_option("--out", sweep_out, "Output directory (overrides config and environment)");
    sweep->add_flag("--json", json, "Machine-readable output");

    auto* summ = app.add_subcommand("summarize", "Rank-pick summary of sweep results");
    std::string summ_in;
    summ->add_option("--in", summ_in, "Sweep output directory")->required()->check(CLI::ExistingDirectory);
    summ->add_flag("--json", json, "Machine-readable output");
    summ->add_flag("--csv", csv, "CSV output");

    auto* tt = app.add_subcommand("ttest", "Paired two-tailed t-test between cells");
    std::string tt_a, tt_b, tt_in, tt_ref;
    auto* opt_a = tt->add_option("--a", tt_a, "First cell directory")->check(CLI::ExistingDirectory);
    auto* opt_b = tt->add_option("--b", tt_b, "Second cell directory")->check(CLI::ExistingDirectory);
    auto* opt_in = tt->add_option("--in", tt_in, "Sweep directory (compare --ref against every other algorithm)")
                       ->check(CLI::ExistingDirectory);
    auto* opt_ref = tt->add_option("--ref", tt_ref, "Reference algorithm for --in");
    opt_a->needs(opt_b);
    opt_b->needs(opt_a);
    opt_in->needs(opt_ref);
    opt_ref->needs(opt_in);
    opt_a->excludes(opt_in);
    tt->add_flag("--json", json, "Machine-readable output");
    tt->add_flag("--csv", csv, "CSV output");

    auto* div = app.add_subcommand("diversity-report", "Average diversity over improving generations");
    std::string div_in;
    double burn_in_fraction = 0.05;
    div->add_option("--in", div_in, "Sweep output directory")->required()->check(CLI::ExistingDirectory);
    div->add_option("--burn-in-fraction", burn_in_fraction, "Share of the budget skipped at the start")
        ->check(CLI::Range(0.0, 0.999999));
    div->add_flag("--json", json, "Machine-readable output");
    div->add_flag("--csv", csv, "CSV output");

    std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
        if (*tt && tt_a.empty() && tt_in.empty()) throw CLI::ValidationError("ttest", "give --a/--b or --in/--ref");
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*list) return cmd_list(out, json, list_function);
        if (*run_cmd) return cmd_run(ro, out);
        if (*sweep) return cmd_sweep(sweep_config, workers, sweep_out, json, out, err);
        if (*summ) {
            const auto cells = load_cells(summ_in);
            return emit(out, json, csv, summary_json(cells), render_summary_csv(cells), render_summary_table(cells));
        }
        if (*tt) {
            std::vector<TTestRow> rows;
            if (!tt_a.empty()) {
                try {
                    rows.push_back(ttest_cells(read_cell(tt_a), read_cell(tt_b)));
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
            } else {
                const auto cells = load_cells(tt_in);
                rows = ttest_grid(cells, tt_ref);
                if (rows.empty()) throw UsageError("no cells to compare against '" + tt_ref + "'");
            }
            return emit(out, json, csv, ttest_json(rows), render_ttest_csv(rows), render_ttest_table(rows));
        }
        if (*div) {
            const auto rows = diversity_report(div_in, burn_in_fraction);
            return emit(out, json, csv, diversity_json(rows), render_diversity_csv(rows), render_diversity_table(rows));
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace cnea::cli
