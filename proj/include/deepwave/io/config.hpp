#pragma once

// Flat `key = value` configuration files. `#` starts a comment; blank lines are
// ignored; keys use the long flag names without leading dashes.

#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>

#include "deepwave/error.hpp"

namespace deepwave::io {

using KeyValues = std::map<std::string, std::string>;

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace detail

inline KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::Usage, "config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = detail::trim(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorCode::Usage, "config line " + std::to_string(lineno) + ": empty key");
    out[key] = value;
  }
  return out;
}

inline KeyValues parse_key_values(const std::string& text) {
  std::istringstream in(text);
  return parse_key_values(in);
}

inline KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Usage, "cannot open config file: " + path);
  return parse_key_values(in);
}

}  // namespace deepwave::io
