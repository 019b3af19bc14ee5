// cli.hh -- command-line front end

#ifndef HOCA_CLI_HH
#define HOCA_CLI_HH

#include <iosfwd>

namespace hoca {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kPositive = 0, kNegative = 1, kUsage = 2, kNotWithinCaps = 3 };

/// Runs `hoca <subcommand> ...`; results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hoca

#endif
