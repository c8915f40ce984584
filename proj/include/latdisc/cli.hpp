#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latdisc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Nine significant digits, '.' decimal point regardless of locale.
std::string format_number(double v);

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latdisc::cli
