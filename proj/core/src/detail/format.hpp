#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

namespace cec::detail {

// Shortest decimal representation that round-trips the double exactly.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_fixed(double v, int precision) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return std::string(buf, buf + n);
}

// Strict full-string double parse; returns false on trailing junk or empty.
inline bool parse_double(std::string_view text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end && !text.empty();
}

inline bool parse_int64(std::string_view text, long long& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end && !text.empty();
}

}  // namespace cec::detail
