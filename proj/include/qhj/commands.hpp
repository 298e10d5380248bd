#pragma once

#include <string>

#include "qhj/config.hpp"
#include "qhj/reduced_action.hpp"
#include "qhj/trajectory.hpp"

namespace qhj::cli {

struct CommandResult {
  int exit_code = 0;
  std::string payload;  // complete output document (CSV or JSON)
};

/// Reduced action for a parsed configuration: the analytic free basis for
/// the free potential, a numeric basis integrated over the x grid (which
/// must be present) otherwise. The debug Wronskian hook is applied here.
ReducedAction build_reduced_action(const RunConfig& config,
                                   const Potential& potential);

CommandResult cmd_trace(const RunConfig& config, Engine engine);
CommandResult cmd_compare(const RunConfig& config);
CommandResult cmd_singularities(const RunConfig& config);
CommandResult cmd_transform(const RunConfig& config);
CommandResult cmd_check(const RunConfig& config);

}  // namespace qhj::cli
