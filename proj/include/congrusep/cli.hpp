#pragma once

#include <ostream>

namespace congrusep {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInput = 2,
  kExitPrecondition = 3,
  kExitResource = 4,
  kExitVerification = 5,
};

/// Entry point of the `congrusep` tool, usable in-process. Results go to
/// `out` (or --output), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace congrusep
