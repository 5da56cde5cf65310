#pragma once

#include <CLI11.hpp>

namespace fleetcharge::cli {

/// Adds every subcommand to `app`.
void register_commands(CLI::App& app);

}  // namespace fleetcharge::cli
