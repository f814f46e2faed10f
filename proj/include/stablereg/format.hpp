#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace stablereg {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// Whole-string parse of a decimal number (surrounding whitespace allowed).
std::optional<double> parse_double(std::string_view text);

}  // namespace stablereg
