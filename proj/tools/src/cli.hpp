#pragma once

#include <iosfwd>

namespace grs::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;   // a verification check failed
inline constexpr int kExitUsage = 2;  // usage, configuration or parameter error

/// Entry point of the `grs` tool; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grs::cli
