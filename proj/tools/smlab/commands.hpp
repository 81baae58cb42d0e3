#pragma once

#include <iosfwd>

#include "smlab/config.hpp"

namespace smlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

/// Each command writes its primary output to `out` and diagnostics to `err`,
/// and returns the process exit code. Plots go to config.plot when set.
/// Config problems are thrown as ConfigError.
int cmd_quantities(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bounds(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace smlab::cli
