#include "lifeaup/format.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace lifeaup {

std::string format_real(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string join_reals(std::span<const double> values, int digits) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_real(values[i], digits);
  }
  return out;
}

double parse_real(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  if (s.empty()) throw std::invalid_argument(std::string(what) + ": empty number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw std::invalid_argument(std::string(what) + ": not a number: '" + s + "'");
  }
  return v;
}

long long parse_integer(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  if (s.empty()) throw std::invalid_argument(std::string(what) + ": empty integer");
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw std::invalid_argument(std::string(what) + ": not an integer: '" + s + "'");
  }
  return v;
}

std::vector<double> parse_reals(std::string_view text, std::string_view what) {
  std::vector<double> out;
  for (std::string_view tok : split_whitespace(text)) out.push_back(parse_real(tok, what));
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

}  // namespace lifeaup
