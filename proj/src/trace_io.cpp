#include "cnea/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cnea {

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

void write_trace_csv(std::ostream& os, const RunTrace& trace) {
    os << kTraceHeader << '\n';
    for (const auto& r : trace.records) {
        os << r.generation << ',' << format_real(r.best_fitness) << ',' << format_real(r.mean_fitness) << ','
           << format_real(r.diversity) << ',' << (r.mode ? to_string(*r.mode) : std::string_view("-")) << ','
           << r.victims << ',' << r.replacements << ',' << format_real(r.wall_ms) << '\n';
    }
}

void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open trace file for writing: " + path.string());
    write_trace_csv(os, trace);
    if (!os) throw std::runtime_error("failed writing trace file: " + path.string());
}

namespace {

double parse_real(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::runtime_error("malformed real '" + s + "'");
    return v;
}

std::size_t parse_count(const std::string& s) {
    std::size_t v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) throw std::runtime_error("malformed integer '" + s + "'");
    return v;
}

} // namespace

RunTrace read_trace_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kTraceHeader) throw std::runtime_error("trace CSV header mismatch");
    RunTrace trace;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 8) throw std::runtime_error("trace CSV line " + std::to_string(lineno) + ": expected 8 fields");
        try {
            GenerationRecord r;
            r.generation = parse_count(f[0]);
            r.best_fitness = parse_real(f[1]);
            r.mean_fitness = parse_real(f[2]);
            r.diversity = parse_real(f[3]);
            if (f[4] == "exploit")
                r.mode = DgeaMode::exploitation;
            else if (f[4] == "explore")
                r.mode = DgeaMode::exploration;
            else if (f[4] != "-")
                throw std::runtime_error("unknown mode '" + f[4] + "'");
            r.victims = parse_count(f[5]);
            r.replacements = parse_count(f[6]);
            r.wall_ms = parse_real(f[7]);
            trace.records.push_back(r);
        } catch (const std::exception& e) {
            throw std::runtime_error("trace CSV line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return trace;
}

RunTrace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open trace file: " + path.string());
    return read_trace_csv(is);
}

} // namespace cnea
