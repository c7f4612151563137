#pragma once

#include <iosfwd>

namespace supralap::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kGeneration = 3,
  kInputMismatch = 4,
  kNumeric = 5,
};

/// Entry point of the `supralap` tool. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace supralap::cli
