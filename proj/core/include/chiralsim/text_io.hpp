#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace chiralsim {

/// Formats a double with 9 significant digits (the CSV contract).
std::string format_g9(double value);

/// Splits text into lines; accepts LF and CRLF, drops the trailing '\r'.
std::vector<std::string_view> split_lines(std::string_view text);

/// Whitespace-delimited tokens of a line.
std::vector<std::string_view> split_ws(std::string_view line);

/// Comma-separated fields of a CSV line (no quoting; the formats here never
/// need it).
std::vector<std::string_view> split_csv(std::string_view line);

/// Strict double parse of a full token; returns false on trailing garbage.
bool parse_double(std::string_view token, double& out);

/// Reads a whole file; throws IoError.
std::string read_file(const std::filesystem::path& path);

/// Writes via a temporary in the same directory and renames over the target,
/// so readers never observe a partial artifact. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace chiralsim
