#include "cnea/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace cnea {

namespace {

std::string trim(std::string_view s) {
    auto b = s.begin(), e = s.end();
    while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
    return std::string(b, e);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw std::invalid_argument("invalid value '" + std::string(value) + "' for " + std::string(key) + " (expected " +
                                std::string(expected) + ")");
}

constexpr std::array<EngineKey, 25> kEngineKeys{{
    {"population", "population size N"},
    {"generations", "generation budget"},
    {"elitism", "members that always survive (>= 1)"},
    {"grid_bins", "grid bins per keyed dimension G (cnea)"},
    {"grid_max_full_dims", "key on every dimension up to this many (cnea)"},
    {"grid_projected_dims", "keyed dimensions when the problem is larger (cnea)"},
    {"dense_fraction", "density threshold fraction tau_dense (cnea)"},
    {"fit_eps", "relative fitness-std threshold for victim regions (cnea)"},
    {"replace_fraction", "share of a victim region replaced (cnea)"},
    {"samples_per_slot", "virgin-zone samples per replacement slot (cnea)"},
    {"cnea_p_crossover", "recombination probability (cnea)"},
    {"cnea_p_mutation", "per-gene mutation probability (cnea)"},
    {"sigma_fraction", "regular mutation std as a fraction of the range (cnea)"},
    {"p_crossover", "recombination probability (baselines)"},
    {"p_genome_mutation", "probability of mutating a whole genome (baselines)"},
    {"sea_variance", "printed (1 + sqrt(t+1)) or annealed (1 / sqrt(t+1))"},
    {"socea_alpha", "power-law alpha for the SOC EA"},
    {"cea_alpha", "power-law alpha for the cellular EA"},
    {"dgea_alpha", "power-law alpha for the diversity-guided EA"},
    {"pow_exponent", "power-law exponent"},
    {"pow_truncation", "power-law upper truncation (multiples of alpha)"},
    {"cea_rows", "cellular grid rows"},
    {"cea_cols", "cellular grid columns"},
    {"d_low", "diversity below which the DGEA explores"},
    {"d_high", "diversity above which the DGEA exploits"},
}};

} // namespace

std::pair<std::string, std::string> split_assignment(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw std::invalid_argument("expected key=value, got '" + std::string(text) + "'");
    auto key = trim(text.substr(0, eq));
    auto value = trim(text.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("empty key in '" + std::string(text) + "'");
    return {std::move(key), std::move(value)};
}

KeyValues parse_key_values(std::istream& is) {
    KeyValues out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        try {
            out.push_back(split_assignment(line));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

KeyValues parse_key_values(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path.string());
    return parse_key_values(is);
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        auto item = trim(text.substr(start, end - start));
        if (!item.empty()) out.push_back(std::move(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_double(std::string_view key, std::string_view value) {
    const std::string s(value);
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    bad_value(key, value, "a real number");
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || p != value.data() + value.size() || value.empty())
        bad_value(key, value, "a non-negative integer");
    return v;
}

std::size_t parse_size(std::string_view key, std::string_view value) {
    return static_cast<std::size_t>(parse_u64(key, value));
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    bad_value(key, value, "true or false");
}

std::span<const EngineKey> engine_keys() { return kEngineKeys; }

bool apply_engine_key(EngineConfig& cfg, std::string_view key, std::string_view value) {
    auto real = [&] { return parse_double(key, value); };
    auto count = [&] { return parse_size(key, value); };
    if (key == "population") cfg.population = count();
    else if (key == "generations") cfg.generations = count();
    else if (key == "elitism") cfg.elitism = count();
    else if (key == "grid_bins") cfg.grid.bins = count();
    else if (key == "grid_max_full_dims") cfg.grid.max_full_dims = count();
    else if (key == "grid_projected_dims") cfg.grid.projected_dims = count();
    else if (key == "dense_fraction") cfg.grid.dense_fraction = real();
    else if (key == "fit_eps") cfg.informed.fit_eps = real();
    else if (key == "replace_fraction") cfg.informed.replace_fraction = real();
    else if (key == "samples_per_slot") cfg.informed.samples_per_slot = count();
    else if (key == "cnea_p_crossover") cfg.informed.p_crossover = real();
    else if (key == "cnea_p_mutation") cfg.informed.p_mutation = real();
    else if (key == "sigma_fraction") cfg.informed.sigma_fraction = real();
    else if (key == "p_crossover") cfg.p_crossover = real();
    else if (key == "p_genome_mutation") cfg.p_genome_mutation = real();
    else if (key == "sea_variance") {
        if (value == "printed") cfg.sea_schedule = SeaVariance::printed;
        else if (value == "annealed") cfg.sea_schedule = SeaVariance::annealed;
        else bad_value(key, value, "printed or annealed");
    }
    else if (key == "socea_alpha") cfg.socea_alpha = real();
    else if (key == "cea_alpha") cfg.cea_alpha = real();
    else if (key == "dgea_alpha") cfg.dgea_alpha = real();
    else if (key == "pow_exponent") cfg.pow.exponent = real();
    else if (key == "pow_truncation") cfg.pow.truncation = real();
    else if (key == "cea_rows") cfg.cea_rows = count();
    else if (key == "cea_cols") cfg.cea_cols = count();
    else if (key == "d_low") cfg.d_low = real();
    else if (key == "d_high") cfg.d_high = real();
    else return false;
    return true;
}

} // namespace cnea
