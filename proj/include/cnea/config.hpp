#pragma once

// Flat key-value configuration ("key = value", '#' comments) and the
// engine parameter keys shared by the CLI and the sweep runner.

#include "cnea/engines.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cnea {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Throws std::invalid_argument naming the offending line.
KeyValues parse_key_values(std::istream& is);
KeyValues parse_key_values(const std::filesystem::path& path);

/// Splits "key=value"; throws std::invalid_argument without '='.
std::pair<std::string, std::string> split_assignment(std::string_view text);

std::vector<std::string> split_list(std::string_view text);

double parse_double(std::string_view key, std::string_view value);
std::size_t parse_size(std::string_view key, std::string_view value);
std::uint64_t parse_u64(std::string_view key, std::string_view value);
bool parse_bool(std::string_view key, std::string_view value);

struct EngineKey {
    std::string_view name;
    std::string_view description;
};

/// Every tunable engine key with a one-line description.
std::span<const EngineKey> engine_keys();

/// Applies one engine key. Returns false for keys it does not know; throws
/// std::invalid_argument for malformed values.
bool apply_engine_key(EngineConfig& cfg, std::string_view key, std::string_view value);

} // namespace cnea
