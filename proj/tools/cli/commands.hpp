#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace wdl::cli {

const std::vector<std::string>& command_names();

/// Runs one subcommand, writing <out>.csv and <out>.json. Returns the exit
/// status (selftest returns 1 when a check fails). Library errors propagate.
int run_command(const std::string& name, RunConfig cfg, std::ostream& log);

}  // namespace wdl::cli
