#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "network.hpp"

namespace bcn {

struct CommandResult {
    int exitCode = 0; // 0 success/feasible, 1 infeasible/false, 2 input error
    nlohmann::json report;
};

// Dispatch a named command against a network. Throws bcn::Error for input
// problems; infeasibility and false verdicts come back as exitCode 1.
CommandResult runCommand(const Network& net, const std::string& command,
                         const nlohmann::json& options);

// Human-readable rendering of a report document.
std::string renderText(const nlohmann::json& report);

} // namespace bcn
