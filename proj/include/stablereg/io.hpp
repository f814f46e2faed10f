#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stablereg {

/// Parses one decimal value per line. Blank lines and lines whose first
/// non-blank character is '#' are skipped. Throws ParseError naming the
/// 1-based line number of the first bad line.
std::vector<double> parse_sample_text(std::string_view text);

/// Reads a file and applies parse_sample_text.
std::vector<double> read_sample_file(const std::filesystem::path& path);

/// Writes values one per line in shortest round-trip form.
std::string format_sample_text(const std::vector<double>& values);

/// Flat `key = value` configuration; '#' starts a comment line. Throws
/// ParseError naming the line for anything else.
std::map<std::string, std::string> parse_key_value_text(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

/// 64-bit FNV-1a digest, rendered as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace stablereg
