#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cnea::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Output directory override read by `run` and `sweep`.
inline constexpr const char* kOutputDirEnv = "CNEA_OUTPUT_DIR";

/// Entry point of the `cnea` tool. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cnea::cli
