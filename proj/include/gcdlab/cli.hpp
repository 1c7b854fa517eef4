#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace gcdlab::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kComputationError = 1, kUsageError = 2 };

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics, usage text and timings to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace gcdlab::cli
