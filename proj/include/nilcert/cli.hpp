#pragma once

#include <ostream>

namespace nilcert {

/// Exit codes shared by the commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;      // parse error, malformed file
inline constexpr int kExitUndecided = 2;  // budget or indeterminate
inline constexpr int kExitFailed = 3;     // verification failure

/// The nilcert command line.  JSON goes to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nilcert
