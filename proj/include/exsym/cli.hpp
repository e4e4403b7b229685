#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace exsym::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInputFile = 3,
  kNumerical = 4,
};

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// --output when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.17g": round-trip exact for doubles.
std::string format_double(double v);

}  // namespace exsym::cli
