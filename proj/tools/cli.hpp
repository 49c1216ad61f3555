// Command-line front end.  Kept as a function so tests can drive it in-process.
#pragma once

#include <ostream>

namespace apnforge::cli {

inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFindings = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apnforge::cli
