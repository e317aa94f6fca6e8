#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace geosketch {

// Runs the batch CLI on argv-style arguments (program name excluded) and
// writes the single-line JSON report (or error object) to `out`.
// Exit codes: 0 success, 2 usage error, 3 data error, 4 oracle budget.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace geosketch
