#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sdlq::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitNumerical = 3,
  kExitOracle = 4,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Data goes to --out (or `out`), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdlq::cli
