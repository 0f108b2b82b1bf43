#pragma once

#include <string>

#include "kappaosc/run_config.hpp"

namespace kappaosc {

struct CommandResult {
    int exit_code{0};
    std::string output;
};

/// Subcommand entry points. dispersion and cluster honor the csv/json format
/// switch; the word-structured reports are always JSON.
CommandResult cmd_dispersion(const RunConfig& config);
CommandResult cmd_compose(const RunConfig& config);
CommandResult cmd_circ(const RunConfig& config);
CommandResult cmd_flip(const RunConfig& config);
CommandResult cmd_solve_shells(const RunConfig& config);
CommandResult cmd_cluster(const RunConfig& config);
CommandResult cmd_star(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);

/// Dispatch by subcommand name; throws std::invalid_argument for unknown names.
CommandResult run_command(const std::string& name, const RunConfig& config);

}  // namespace kappaosc
