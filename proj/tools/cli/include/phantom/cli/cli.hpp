#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace phantom::cli {

inline constexpr std::string_view tool_version = "phantom 0.1.0";

/// Exit codes: 0 success, 1 I/O failure, 2 usage or domain error,
/// 3 numerical failure.
enum ExitCode { ok = 0, io_failure = 1, usage = 2, numerical = 3 };

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out` unless --output names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace phantom::cli
