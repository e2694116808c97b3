#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "pauligap/cli/config.hpp"

namespace pauligap::cli {

const std::vector<std::string>& command_names();

// Runs one command, writing its files and manifest.json into cfg.out_dir.
// Returns the process exit status: 0 success, 1 error (partial outputs are
// flagged in the manifest), 3 verify completed with failing checks.
int run_command(const std::string& command, const RunConfig& cfg, const Json& invocation,
                std::ostream& log);

// The invariant suite behind `verify`. Deterministic for a given config.
Json verify_suite(const RunConfig& cfg);

}  // namespace pauligap::cli
