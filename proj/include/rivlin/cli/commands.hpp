#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rivlin/cli/config.hpp"
#include "rivlin/cli/table.hpp"

namespace rivlin::cli {

Table run_diagram(const RunConfig& config);
Table run_probs(const RunConfig& config);
Table run_stoch(const RunConfig& config);
Table run_sample(const RunConfig& config);
std::string run_regime(const RunConfig& config);

/// Full command-line entry point. Returns the process exit code:
/// 0 success, 1 runtime failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rivlin::cli
