#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asoc::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_runtime = 1;
inline constexpr int exit_usage = 2;

/// Entry point behind the `asoc` executable. `args` excludes the program
/// name. Data goes to `out` (only when no output path is given), diagnostics
/// to `err`. `out_is_terminal` selects the default output format.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool out_is_terminal);

}  // namespace asoc::cli
