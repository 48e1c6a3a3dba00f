#pragma once

#include <iosfwd>

namespace nonrecip::cli {

// Exit codes of the command-line front end.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kIoError = 3;
inline constexpr int kUnstable = 4;
inline constexpr int kNoExtremum = 5;
inline constexpr int kNonConvergence = 6;

/// Runs the `nonrecip` command line. Results without --out go to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nonrecip::cli
