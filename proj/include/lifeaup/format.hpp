#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lifeaup {

// Shortest-roundtrip-safe decimal (printf %.{digits}g).
std::string format_real(double value, int digits = 17);
std::string join_reals(std::span<const double> values, int digits = 17);

// Strict decimal parsing; throws std::invalid_argument naming `what`.
double parse_real(std::string_view text, std::string_view what);
long long parse_integer(std::string_view text, std::string_view what);
std::vector<double> parse_reals(std::string_view text, std::string_view what);

std::vector<std::string_view> split_whitespace(std::string_view text);
std::string_view trim(std::string_view text);

}  // namespace lifeaup
