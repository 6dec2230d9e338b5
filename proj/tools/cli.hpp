#pragma once

#include <iosfwd>

namespace aodv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailed = 1;
inline constexpr int kExitInputError = 2;

/// Entry point of the aodvsim command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aodv::cli
