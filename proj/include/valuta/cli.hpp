#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace valuta::cli {

enum ExitCode : int {
  kPass = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kGeometryError = 3,
};

/// Runs `valuta <args...>` (args excludes the program name); JSON goes to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace valuta::cli
