#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace olgdet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitDomain = 2;  ///< bad flags, malformed config, parameter-domain violations
inline constexpr int kExitSolver = 3;  ///< a numerical procedure failed

/// Entry point for the olgdet command line. `args` excludes the program name.
/// Results go to `out` (or the --out file); diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace olgdet::cli
