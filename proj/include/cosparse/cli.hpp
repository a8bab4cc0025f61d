#pragma once

#include <string>

#include "cosparse/config.hpp"

namespace cosparse::cli {

// Runs one subcommand ("constants", "table1", "figures", "recover", "rip",
// "verify") with the given config, writing its outputs plus the resolved
// config under out_dir. Returns the process exit code: 0 success, 2 when the
// verification suite records gating violations, 3 when a solver fails to
// produce a feasible point. Config and I/O problems throw; the binary maps
// those to exit code 1.
int run_subcommand(const std::string& name, Config cfg, const std::string& out_dir);

}  // namespace cosparse::cli
