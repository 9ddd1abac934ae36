#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sepcoset {

// Parses argv, runs the requested subcommand, writes the report to `out`.
// Returns the process exit code: 0 pass, 1 theorem violation, 2 usage error,
// 3 inconclusive at budget.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sepcoset
