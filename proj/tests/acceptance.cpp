// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "cnea/benchmarks.hpp"
#include "cnea/cli.hpp"
#include "cnea/diversity.hpp"
#include "cnea/engines.hpp"
#include "cnea/harness.hpp"
#include "cnea/informed.hpp"
#include "cnea/niching.hpp"
#include "cnea/stats.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace cnea;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

Verdict benchmark_fidelity() {
    Verdict v;
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (auto id : kAllFunctions)
        for (std::size_t dim : {2, 20, 50, 100}) {
            const auto fn = BenchmarkFn::make(id, dim);
            const double f = fn.evaluate(fn.optimum_point());
            worst = std::max(worst, std::abs(f));
            v.require(std::abs(f) <= 1e-9, std::string(to_string(id)) + " dim " + std::to_string(dim));
        }
    const std::vector<double> griewank_at(5, 100.0);
    v.require(BenchmarkFn::make("griewank", 5).evaluate(griewank_at) == 0.0, "griewank at 100");
    const double secs = seconds_since(t0);
    v.require(secs < 1.0, "runtime " + fmt("%.3f s", secs));
    if (v.pass) v.detail = "max |f(opt)| " + fmt("%.2e", worst) + ", " + fmt("%.3f s", secs);
    return v;
}

Verdict rotation_orthogonality() {
    Verdict v;
    double worst = 0.0;
    for (std::size_t n = 2; n <= 100; n += 2) {
        const auto a = RotationMatrix(n).dense();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                double s = 0.0;
                for (std::size_t r = 0; r < n; ++r) s += a[r * n + i] * a[r * n + k];
                worst = std::max(worst, std::abs(s - (i == k ? 1.0 : 0.0)));
            }
    }
    v.require(worst < 1e-12, "max deviation " + fmt("%.2e", worst));
    if (v.pass) v.detail = "max|A'A - I| " + fmt("%.2e", worst);
    return v;
}

Verdict diversity_oracle() {
    Verdict v;
    RngStream rng(2024);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng.index(20), d = 1 + rng.index(5);
        std::vector<double> lo(d), hi(d);
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = rng.uniform(-10.0, 0.0);
            hi[j] = lo[j] + rng.uniform(0.5, 20.0);
        }
        const SearchSpace space(lo, hi);
        std::vector<Individual> members;
        std::vector<std::vector<double>> raw;
        for (std::size_t i = 0; i < n; ++i) {
            raw.push_back(random_genome(space, rng));
            members.push_back({raw.back(), 0.0});
        }
        worst = std::max(worst, std::abs(distance_to_average(members, space) - oracle::distance_to_average(raw, lo, hi)));
    }
    v.require(worst <= 1e-12, "oracle deviation " + fmt("%.2e", worst));

    const auto unit2 = SearchSpace::cube(2, 0.0, 1.0);
    const std::vector<Individual> same(7, Individual{{0.37, 0.81}, 0.0});
    v.require(distance_to_average(same, unit2) == 0.0, "identical population not exactly 0");
    const std::vector<Individual> hand{{{0.0, 0.0}, 0.0}, {{1.0, 1.0}, 0.0}};
    v.require(std::abs(distance_to_average(hand, unit2) - 0.5) <= 1e-12, "hand case != 0.5");
    if (v.pass) v.detail = "max oracle deviation " + fmt("%.2e", worst);
    return v;
}

Verdict delta_mu() {
    Verdict v;
    RngStream rng(77);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t rows = 1 + rng.index(12), len = 1 + rng.index(16);
        const int alphabet = 1 + static_cast<int>(rng.index(4));
        std::vector<std::vector<std::int32_t>> data(rows, std::vector<std::int32_t>(len));
        for (auto& r : data)
            for (auto& s : r) s = static_cast<std::int32_t>(rng.index(static_cast<std::size_t>(alphabet)));
        std::size_t mixed = 0;
        for (std::size_t j = 0; j < len; ++j) {
            std::set<std::int32_t> symbols;
            for (const auto& r : data) symbols.insert(r[j]);
            if (symbols.size() > 1) ++mixed;
        }
        const DiscretePopulation p(data);
        v.require(degree_of_diversity(p) + maturity(p) == len, "delta + mu != l");
        v.require(degree_of_diversity(p) == mixed, "delta disagrees with direct count");
    }
    using D = DiscretePopulation;
    v.require(degree_of_diversity(D::from_strings({"000", "011"})) == 2, "{000,011} delta");
    v.require(degree_of_diversity(D::from_strings({"101", "101", "101"})) == 0, "{101 x3} delta");
    v.require(degree_of_diversity(D::from_strings({"01", "10"})) == 2, "{01,10} delta");
    v.require(maturity(D::from_strings({"000", "011"})) == 1, "{000,011} mu");
    v.require(maturity(D::from_strings({"101", "101"})) == 3, "{101,101} mu");
    v.require(maturity(D::from_strings({"01", "10"})) == 0, "{01,10} mu");
    const std::vector<Individual> f3{{{0.0}, 3.0}, {{0.0}, 3.0}, {{0.0}, 3.0}}, f02{{{0.0}, 0.0}, {{0.0}, 2.0}},
        f1{{{0.0}, 1.0}};
    v.require(fitness_std(f3) == 0.0 && fitness_std(f02) == 1.0 && fitness_std(f1) == 0.0, "fitness_std examples");
    if (v.pass) v.detail = "1000 populations and worked examples";
    return v;
}

EngineConfig engine_config(Algorithm algo, std::size_t dim, std::size_t n, std::size_t gens, std::uint64_t seed) {
    auto cfg = EngineConfig::defaults(algo, dim);
    cfg.population = n;
    cfg.generations = gens;
    cfg.seed = seed;
    if (algo == Algorithm::cea) {
        cfg.cea_rows = 5;
        cfg.cea_cols = n / 5;
    }
    return cfg;
}

Verdict elitism_monotonicity() {
    Verdict v;
    const auto fn = BenchmarkFn::make("ellipsoid", 5);
    std::size_t steps = 0;
    for (auto algo : kAllAlgorithms)
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            RngStream rng(seed);
            const auto t = run(engine_config(algo, 5, 50, 100, seed), fn, rng);
            v.require(t.records.size() == 101, "trace length");
            for (std::size_t g = 1; g < t.records.size(); ++g, ++steps)
                v.require(t.records[g].best_fitness <= t.records[g - 1].best_fitness,
                          std::string(to_string(algo)) + " seed " + std::to_string(seed) + " gen " + std::to_string(g));
        }
    if (v.pass) v.detail = std::to_string(steps) + " steps checked";
    return v;
}

Verdict cnea_capability() {
    Verdict v;
    const auto fn = BenchmarkFn::make("ellipsoid", 10);
    const auto t0 = Clock::now();
    std::vector<double> errors;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        RngStream rng(seed);
        const auto t = run(engine_config(Algorithm::cnea, 10, 100, 200, seed), fn, rng);
        errors.push_back(error_value(t.best.f(), fn.optimum_value()));
    }
    const double secs = seconds_since(t0);
    const double med = median(errors);
    v.require(med < 1e-3, "median error " + fmt("%.3e", med));
    v.require(secs < 60.0, "runtime " + fmt("%.1f s", secs));
    v.detail = "median error " + fmt("%.3e", med) + ", " + fmt("%.1f s", secs);
    return v;
}

Verdict direction_of_comparison() {
    Verdict v;
    const auto fn = BenchmarkFn::make("rastrigin", 10);
    const auto t0 = Clock::now();
    std::vector<double> cnea_err, sea_err;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        RngStream a(seed), b(seed);
        cnea_err.push_back(run(engine_config(Algorithm::cnea, 10, 100, 500, seed), fn, a).best.f());
        sea_err.push_back(run(engine_config(Algorithm::sea, 10, 100, 500, seed), fn, b).best.f());
    }
    const double secs = seconds_since(t0);
    const auto tt = paired_ttest(cnea_err, sea_err);
    v.require(mean(cnea_err) < mean(sea_err), "CNEA mean not below SEA mean");
    v.require(tt.p_value < 0.05, "p = " + fmt("%.3g", tt.p_value));
    v.require(secs < 300.0, "runtime " + fmt("%.1f s", secs));
    v.detail = "CNEA mean " + fmt("%.3g", mean(cnea_err)) + ", SEA mean " + fmt("%.3g", mean(sea_err)) + ", p " +
               fmt("%.3g", tt.p_value) + ", " + fmt("%.1f s", secs);
    return v;
}

Verdict informed_contract() {
    Verdict v;
    const auto fn = BenchmarkFn::make("rastrigin", 10);
    const std::vector<double> planted(10, 4.5);
    std::size_t replaced = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        RngStream rng(seed);
        Population pop;
        for (int i = 0; i < 20; ++i) pop.members.push_back({planted, fn.evaluate(planted)});
        for (int i = 0; i < 80; ++i) {
            auto g = random_genome(fn.space(), rng);
            const double f = fn.evaluate(g);
            pop.members.push_back({std::move(g), f});
        }
        GridConfig gc;
        const auto grid = build_grid(pop, fn.space(), gc.bins, KeyProjection::draw(10, gc, rng));
        const auto regions = high_density_regions(grid, pop, gc.dense_fraction);
        InformedOpConfig cfg;
        const auto victims = detect_victims(regions, pop, cfg);
        bool exact = victims.size() == 1;
        if (exact) {
            auto members = victims[0].region.member_indices;
            std::sort(members.begin(), members.end());
            std::vector<std::size_t> expect(20);
            for (std::size_t i = 0; i < 20; ++i) expect[i] = i;
            exact = members == expect;
        }
        v.require(exact, "seed " + std::to_string(seed) + ": flagged regions differ from the planted one");
        if (!exact) continue;

        const auto before = pop;
        MemoryArchive archive;
        const auto stats = informed_mutation(pop, victims, fn.space(), grid, fn, archive, rng, cfg);
        v.require(pop.size() == before.size(), "population size changed");
        const double region_mean = victims[0].region.fitness_mean;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if (pop[i].genome == before[i].genome) continue;
            ++replaced;
            v.require(pop[i].f() < region_mean, "replacement not better than region mean");
            v.require(std::find(victims[0].replace_indices.begin(), victims[0].replace_indices.end(), i) !=
                          victims[0].replace_indices.end(),
                      "member outside the replace slots changed");
        }
        v.require(stats.replaced > 0, "no member replaced");
    }
    if (v.pass) v.detail = std::to_string(replaced) + " replacements over 10 constructed populations";
    return v;
}

Verdict stagnation_detector() {
    Verdict v;
    std::vector<double> best(1200);
    for (std::size_t g = 0; g < best.size(); ++g) best[g] = g <= 100 ? 500.0 - static_cast<double>(g) : 400.0;
    const auto s = detect_stagnation(best, {500});
    v.require(s == std::optional<std::size_t>{600}, "expected stagnation at 600");

    RngStream rng(404);
    const auto none = static_cast<std::size_t>(-1);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 20 + rng.index(1500), window = 1 + rng.index(500);
        const double p = rng.uniform() * 0.05;
        std::vector<double> trace(n);
        trace[0] = 1e3;
        for (std::size_t g = 1; g < n; ++g) trace[g] = rng.bernoulli(p) ? trace[g - 1] * rng.uniform() : trace[g - 1];
        v.require(detect_stagnation(trace, {window}).value_or(none) == oracle::stagnation(trace, window, none),
                  "oracle disagreement on random trace " + std::to_string(t));
    }
    if (v.pass) v.detail = "stagnation at 600; 100 random traces agree";
    return v;
}

Verdict ttest_oracle() {
    Verdict v;
    double worst = 0.0;
    for (double df : {1.0, 10.0, 99.0})
        for (double t : {0.0, 1.0, 2.0, 5.0})
            worst = std::max(worst, std::abs(student_t_two_tailed(t, df) - oracle::t_two_tailed(t, df)));
    v.require(worst <= 1e-6, "max deviation " + fmt("%.2e", worst));
    const std::vector<double> a{0.3, 1.7, 2.2, 9.1, 4.4};
    v.require(paired_ttest(a, a).p_value == 1.0, "identical samples p != 1");
    if (v.pass) v.detail = "max deviation " + fmt("%.2e", worst);
    return v;
}

Verdict dgea_modes() {
    Verdict v;
    using M = DgeaMode;
    const std::vector<double> diversity{0.1, 1e-6, 0.1, 5e-6, 0.25, 0.3, 0.2, 4.9e-6, 0.26, 0.0};
    const std::vector<M> expect{M::exploitation, M::exploration, M::exploration, M::exploration, M::exploration,
                                M::exploitation, M::exploitation, M::exploration, M::exploitation, M::exploration};
    M mode = M::exploitation;
    for (std::size_t i = 0; i < diversity.size(); ++i) {
        mode = next_mode(mode, diversity[i], 5e-6, 0.25);
        v.require(mode == expect[i], "step " + std::to_string(i));
    }

    const auto fn = BenchmarkFn::make("ellipsoid", 5);
    auto cfg = engine_config(Algorithm::dgea, 5, 50, 200, 3);
    RngStream rng(3);
    const auto t = run(cfg, fn, rng);
    v.require(t.records[0].mode == M::exploitation, "initial mode");
    for (std::size_t g = 1; g < t.records.size(); ++g)
        v.require(t.records[g].mode == next_mode(*t.records[g - 1].mode, t.records[g - 1].diversity, 5e-6, 0.25),
                  "engine mode at gen " + std::to_string(g));
    if (v.pass) v.detail = "fabricated sequence and engine trace follow the hysteresis rule";
    return v;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict cli_determinism() {
    Verdict v;
    const auto dir = fs::temp_directory_path() / "cnea_acceptance_cli";
    fs::remove_all(dir);
    for (auto algo : kAllAlgorithms) {
        const std::string name(to_string(algo));
        std::string first;
        for (int rep = 0; rep < 2; ++rep) {
            const auto path = dir / (name + "_" + std::to_string(rep) + ".csv");
            std::vector<std::string> args{"cnea", "run", "--algo", name, "--function", "rastrigin", "--dim", "4",
                                          "--generations", "30", "--population", "30", "--seed", "11",
                                          "--out", path.string()};
            if (algo == Algorithm::cea)
                args.insert(args.end(), {"--set", "cea_rows=5", "--set", "cea_cols=6"});
            std::ostringstream out, err;
            v.require(cli::run_cli(args, out, err) == 0, name + ": run failed: " + err.str());
            if (rep == 0) first = slurp(path);
            else v.require(!first.empty() && slurp(path) == first, name + ": traces differ");
        }
    }
    fs::remove_all(dir);
    if (v.pass) v.detail = "byte-identical traces for all five engines";
    return v;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"benchmark fidelity", benchmark_fidelity},
        {"rotation orthogonality", rotation_orthogonality},
        {"distance-to-average oracle", diversity_oracle},
        {"degree of diversity and maturity", delta_mu},
        {"elitism monotonicity", elitism_monotonicity},
        {"CNEA capability on ellipsoid", cnea_capability},
        {"CNEA beats SEA on rastrigin", direction_of_comparison},
        {"informed operator contract", informed_contract},
        {"stagnation detector", stagnation_detector},
        {"t-test oracle", ttest_oracle},
        {"DGEA mode logic", dgea_modes},
        {"run determinism", cli_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        if (!v.pass) ++failed;
        std::printf("%s %2zu  %-34s %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
