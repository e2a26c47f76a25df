#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qrom::cli {

/// Exit codes of qromctl.
enum ExitCode : int {
  kOk = 0,
  kIoOrParse = 1,
  kInvalidParameters = 2,
  kVerificationFailed = 3,
};

/// Runs `qromctl <args...>` (args exclude the program name) writing normal
/// output to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace qrom::cli
