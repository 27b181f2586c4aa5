#pragma once

#include <string>
#include <vector>

namespace impactlab {

/// Entry point behind the impactlab binary: parses args (program name not
/// included), dispatches to a subcommand, writes CSV/SVG outputs and a
/// manifest when --out is given. Returns 0 on success, 2 on validation
/// errors, 1 on numerical-reliability or no-arbitrage failures.
int run_command(const std::vector<std::string>& args);

} // namespace impactlab
