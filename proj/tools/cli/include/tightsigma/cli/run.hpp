#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tightsigma::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1; // verification failed or nothing found
inline constexpr int kExitUsage = 2;

/// Runs one `tsig` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tightsigma::cli
