#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace twindragon::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int usage = 2;
inline constexpr int degenerate_line = 3;
inline constexpr int empty_intersection = 4;
inline constexpr int io = 5;
}  // namespace exit_code

/// Runs the command line `args` (args[0] is the program name). Documents go
/// to `out`, banners and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twindragon::cli
