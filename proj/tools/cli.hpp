#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nuframe::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
};

/// Runs one command. args excludes the program name. Reports go to --out
/// when given, otherwise to out; diagnostics and one-line summaries go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nuframe::cli
