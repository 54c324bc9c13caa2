#pragma once

#include <iosfwd>

namespace shakebal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRunFailure = 2;

/// Entry point of `shakebal <balance|calibrate|bench|profile> [flags]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shakebal::cli
