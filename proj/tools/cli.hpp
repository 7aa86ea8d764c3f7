#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vocbench::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kDataError = 2,
  kInternalError = 3,
};

/// Runs `vocbench <args...>`; args excludes the program name. Results go to
/// `out`, diagnostics and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vocbench::cli
