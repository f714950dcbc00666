#pragma once

#include <string>
#include <vector>

namespace adgraph::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalidScenario = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitInternal = 4;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Runs one command line. `args` excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace adgraph::cli
