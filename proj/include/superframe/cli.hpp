#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace superframe::cli {

enum ExitCode : int {
  kExitPass = 0,
  kExitInputError = 1,
  kExitUnsupported = 2,
  kExitNotAdmissible = 3,
  kExitVerificationFailed = 4,
};

/// Runs `superframe <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace superframe::cli
