#pragma once

// Locale-independent number formatting for the emitters.

#include <charconv>
#include <string>
#include <system_error>

namespace deepwave::io {

/// 17 significant digits, enough to round-trip any double.
inline std::string format_g17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Shortest representation that round-trips.
inline std::string format_shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_fixed(double v, int decimals) {
  char buf[128];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
  if (res.ec != std::errc{}) return format_g17(v);
  std::string s(buf, res.ptr);
  if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos) {
    if (!s.empty() && s.front() == '-') s.erase(0, 1);
  }
  return s;
}

inline std::string format_sig(double v, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

}  // namespace deepwave::io
