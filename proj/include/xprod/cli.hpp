#pragma once

// Experiment driver behind the xprod executable.

#include <string>
#include <string_view>
#include <vector>

#include "xprod/groups.hpp"

namespace xprod::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kPass = 0,
  kInternalError = 1,
  kConfigError = 2,
  kResourceCap = 3,
  kCheckFailed = 4,
};

/// Runs one subcommand; returns the process exit code.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

/// Splits on commas that are not inside parentheses.
std::vector<std::string> split_top_level(std::string_view text, char sep = ',');
/// "a..b", "ball:N", "folner:N", or a comma list of elements.
std::vector<GroupElement> parse_set(const GroupSpec& spec, std::string_view text);
/// "a..b" or a comma list of nonnegative integers.
std::vector<std::size_t> parse_radii(std::string_view text);

}  // namespace xprod::cli
