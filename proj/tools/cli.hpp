#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lisdev::cli {

/// Runs one subcommand. args excludes the program name. Returns the process
/// exit code: 0 success, 2 validation or usage error, 1 runtime error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lisdev::cli
