#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace topicdx::textio {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Splits into lines, accepting LF and CRLF. A trailing newline does not
/// produce an empty final line.
std::vector<std::string_view> split_lines(std::string_view text);

/// Splits on `delim`. When `quoted` is set, double-quoted fields may contain
/// the delimiter and "" escapes a quote.
std::vector<std::string> split_fields(std::string_view line, char delim, bool quoted = false);

std::string_view trim(std::string_view s);

/// Locale-independent parse accepting nan/inf spellings. Whitespace around the
/// value is ignored; anything else makes it fail.
std::optional<double> parse_double(std::string_view s);

/// Shortest representation that round-trips to the same double.
std::string format_double(double value);
void append_double(std::string& out, double value);

}  // namespace topicdx::textio
