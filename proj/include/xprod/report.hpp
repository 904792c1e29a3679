#pragma once

// Small output helpers: round-trip number formatting, RFC 4180 CSV, and
// atomic file writes.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace xprod {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Quotes a CSV field when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace xprod
