#pragma once

#include <ostream>

namespace cob3 {

/// Exit codes of the command-line driver.
enum ExitCode : int {
  kExitOk = 0,
  kExitNotEqual = 1,  // eq: terms differ; rewrite-path: no path in bound
  kExitInput = 2,     // parse, type, file and argument errors
  kExitSemantic = 3,  // algebra verification, unknown primes, failed demos
};

/// Entry point of the `cob3` tool, writing to the given streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cob3
