#pragma once

// Subcommands of the wittenlab tool. Each writes its artifacts and a
// manifest.json into the output directory and returns the exit status
// (0 success, 1 usage or config error, 2 non-convergent result).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace wittenlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNonConvergent = 2;

struct RunOptions {
  std::optional<std::filesystem::path> out;  // overrides output.directory
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;  // overrides the config seed
};

[[nodiscard]] const std::vector<std::string>& command_names();

/// Runs one subcommand; diagnostics go to `log`. Never throws for errors
/// the exit-code convention covers.
int run_command(const std::string& name, const RunConfig& cfg, const RunOptions& opts, std::ostream& log);

}  // namespace wittenlab::cli
