#pragma once

// Command-line front end. Exit codes: 0 FEASIBLE/PASS, 2 INFEASIBLE/FAIL,
// 3 UNDECIDED, 1 usage or input errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace symext {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFail = 2;
inline constexpr int kExitUndecided = 3;

/// args excludes the program name. The report goes to `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symext
