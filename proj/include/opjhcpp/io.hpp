#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace opjhcpp {

// Shortest round-trip decimal representation; integral values keep a
// trailing ".0" so the column stays recognizably floating point.
std::string format_double(double value);

// RFC-style CSV quoting: quotes only fields containing ',', '"', '\n' or
// '\r'.
std::string csv_field(const std::string& raw);

std::string join_indices(const std::vector<int>& values, char separator = ';');

std::string read_file(const std::filesystem::path& path);

// Write-temp-then-rename so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace opjhcpp
