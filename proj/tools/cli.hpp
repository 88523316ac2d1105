#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace smartsort::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

// Environment variable naming the default output directory of bench/report.
inline constexpr const char* kOutDirEnv = "SMARTSORT_OUT_DIR";

/// Runs the command line; args excludes the program name. Returns the
/// process exit code: 0 success, 1 data or runtime error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smartsort::cli
