#pragma once

#include <iosfwd>

namespace gadkit::cli {

// Process exit codes beyond the decomposer's 1/2/3.
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitSoftware = 70;
inline constexpr int kExitIo = 74;

/// Runs one invocation of the gadkit tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gadkit::cli
