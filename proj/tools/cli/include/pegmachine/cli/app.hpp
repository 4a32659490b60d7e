#pragma once

#include <iosfwd>

namespace pegmachine::cli {

enum ExitCode : int {
  kExitAccept = 0,
  kExitReject = 1,
  kExitInvalidInput = 2,
  kExitBudget = 3,
  kExitDivergence = 4,
};

/// Entry point of the pegmachine tool. Never throws.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pegmachine::cli
