#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mpfc {

/// Shortest round-trippable decimal form ("%.17g"); stable across runs.
std::string format_double(double v);

/// Writes `content` to a temporary sibling file and renames it into place so
/// readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Splits on a single-character delimiter, keeping empty fields.
std::vector<std::string> split(std::string_view s, char delim);

std::string trim(std::string_view s);

/// FNV-1a 64-bit hash, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace mpfc
