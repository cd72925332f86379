#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cubepaths::cli {

/// Exit codes: 0 success, 1 an analysis verdict failed (invalid complex,
/// not spatial, path not regular), 2 unusable input or arguments.
inline constexpr int kOk = 0;
inline constexpr int kVerdictFailure = 1;
inline constexpr int kInputError = 2;

/// Runs the command line args (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubepaths::cli
