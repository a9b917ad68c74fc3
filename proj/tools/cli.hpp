#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace patchladder::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 2,
  kNumericalFailure = 3,
  kNoBandFound = 4,
};

/// Runs one invocation; args excludes the program name. Reports go to
/// `out`, provenance (version, input digests) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

}  // namespace patchladder::cli
