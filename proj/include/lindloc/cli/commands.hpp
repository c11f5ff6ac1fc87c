#pragma once

#include <ostream>
#include <string>

#include "lindloc/cli/config.hpp"

namespace lindloc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

struct CommandOptions {
  std::string out_dir;  // overrides output.directory when non-empty
  unsigned jobs = 1;
};

int cmd_simulate(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out);
int cmd_steady(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out);
int cmd_compare(const RunConfig& cfg, const CommandOptions& opts, std::ostream& out);

/// Shortest round-trip decimal form, independent of the locale.
std::string format_double(double v);

/// Entry point behind the lindloc binary. Never throws.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lindloc::cli
