#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srhsd::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInputError = 2,    // unreadable input or domain error
  kExitNumericError = 3,  // a numerical procedure failed
  kExitUsageError = 4,    // bad flags
};

/// Environment variable read for the default simulation seed.
inline constexpr const char* kSeedEnvVar = "SRHSD_SEED";

/// daily=252, weekly=52, monthly=12, quarterly=4, annual=1, custom:<ppy>.
double parse_frequency(const std::string& freq);

/// Runs the command line `args` (without the program name); returns the
/// process exit code. Results go to `out` unless redirected by --output.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srhsd::cli
