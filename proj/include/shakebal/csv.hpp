#pragma once

// Minimal CSV helpers: UTF-8, LF endings, '.' decimal separator and
// shortest round-trip float formatting. Fields never need quoting in the
// schemas written here; write_row rejects fields that would.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace shakebal::csv {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

double parse_double(std::string_view text);
unsigned long long parse_unsigned(std::string_view text);

std::vector<std::string> split_line(std::string_view line);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

/// Reads all rows (header included); skips a trailing empty line.
std::vector<std::vector<std::string>> read_rows(std::istream& in);

}  // namespace shakebal::csv
