#pragma once

// Command-line front end. Exit codes: 0 ok, 1 verify found failing
// properties, 2 usage or parse error, 3 invalid structure, 4 failed
// mathematical precondition. Errors are written to `err` as JSON with a
// "violated" field.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace kreinlab::cli {

struct Environment {
  std::optional<std::string> tol;  // KREINLAB_TOL
};

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitStructure = 3,
  kExitPrecondition = 4,
};

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env = {});

}  // namespace kreinlab::cli
