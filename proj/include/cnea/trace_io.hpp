#pragma once

// Trace CSV persistence. Header:
//   generation,best_fitness,mean_fitness,diversity,mode,victims,replacements,wall_ms
// Reals are written with 17 significant digits so they round-trip.

#include "cnea/engines.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace cnea {

inline constexpr const char* kTraceHeader =
    "generation,best_fitness,mean_fitness,diversity,mode,victims,replacements,wall_ms";

std::string format_real(double v);

void write_trace_csv(std::ostream& os, const RunTrace& trace);
void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace);

/// Reads the per-generation records back (best individual and algorithm
/// are not stored in the CSV). Throws std::runtime_error on malformed input.
RunTrace read_trace_csv(std::istream& is);
RunTrace read_trace_csv(const std::filesystem::path& path);

} // namespace cnea
