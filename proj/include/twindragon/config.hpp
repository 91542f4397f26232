#pragma once

namespace twindragon::tolerance {

/// Absolute tolerance for polynomial roots (Perron roots, lambda).
inline constexpr double kRoot = 1e-12;
/// Tolerance for reported comparisons between computed reals.
inline constexpr double kCompare = 1e-9;
/// Environment variable that overrides kRoot in the command-line tool.
inline constexpr const char* kRootEnvVar = "TWINDRAGON_ROOT_TOL";

}  // namespace twindragon::tolerance
