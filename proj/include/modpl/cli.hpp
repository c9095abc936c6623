#pragma once

#include <iosfwd>

namespace modpl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedCheck = 1;  // verify-tables diff failed, or internal error
inline constexpr int kExitBadArgs = 2;
inline constexpr int kExitBadData = 3;

/// Parses argv and runs one subcommand: scan-quad, scan-cubic, h5, wieferich, heuristics,
/// verify-tables. Reports go to `out`, progress and errors to `err`.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace modpl
