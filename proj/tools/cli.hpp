#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pn2sc::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kValidationFailure = 2,
  kNotFullyReduced = 3,
};

/// Entry point of the `pn2sc` tool. `args[0]` is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pn2sc::cli
