#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orthodisk::cli {

/// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // the library rejected the request
inline constexpr int kExitUsage = 2;    // unknown flag, bad value, missing subcommand
inline constexpr int kExitIo = 3;       // unreadable input or unwritable output

/// Runs one CLI invocation. Reports go to `out` unless --out names a file;
/// errors are written to `err` as a single JSON line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with args excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orthodisk::cli
