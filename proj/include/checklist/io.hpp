#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace checklist::io {

/// Writes to "<path>.tmp" and renames over the target.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

std::string read_file(const std::filesystem::path& path);

std::vector<std::string> split(std::string_view line, char delim);
std::string_view trim(std::string_view s);

/// Shortest decimal text that round-trips the double ("NaN" for NaN).
std::string format_double(double x);
/// Fixed-precision text for human-readable tables.
std::string format_fixed(double x, int decimals);

/// Rows of a comma-separated file, header included.
std::vector<std::vector<std::string>> read_csv(
    const std::filesystem::path& path);

}  // namespace checklist::io
