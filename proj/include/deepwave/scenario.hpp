#pragma once

// Scenario configuration shared by the command-line tool and the tests.

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <system_error>
#include <vector>

#include "deepwave/error.hpp"
#include "deepwave/io/config.hpp"
#include "deepwave/stagnation.hpp"
#include "deepwave/trajectories.hpp"
#include "deepwave/wave_field.hpp"

namespace deepwave {

enum class SolutionKind { Peakon, Elliptic, Oracle };
enum class OutputFormat { Csv, Json, Svg };

struct ScenarioConfig {
  WaveParams wave;
  double beta = 1.0;
  SolutionKind solution = SolutionKind::Elliptic;
  double t_start = 0.0;
  double t_end = 10.0;
  std::size_t n_samples = 1001;
  std::optional<double> const1;  // defaults to pi / (2k)
  double const2 = 1.0;
  double t0 = 0.0;
  std::optional<double> x0, z0;  // oracle start; defaults to the closed form at t_start
  std::string out = "-";
  OutputFormat format = OutputFormat::Csv;
  std::string svg;
  int svg_width = 640, svg_height = 480, svg_margin = 60;
  double z_min = kDefaultStagnationZMin;
  double z_max = kDefaultStagnationZMax;
  std::size_t grid = kDefaultStagnationGrid;
  // point probe for `field`
  double x = 0.0, z = 0.0, t = 0.0;
  std::vector<double> k_list;  // `dispersion` accepts a comma-separated list

  PeakonParams peakon() const {
    return {const1.value_or(0.5 * std::numbers::pi / wave.k), const2};
  }

  void validate() const {
    wave.validate();
    if (n_samples < 2) throw Error(ErrorCode::Usage, "samples must be at least 2");
    if (!(t_end > t_start)) throw Error(ErrorCode::Usage, "t-end must exceed t-start");
    if (!(z_min < z_max)) throw Error(ErrorCode::Usage, "z-min must be below z-max");
    if (grid < 1000) throw Error(ErrorCode::Usage, "grid must be at least 1000");
    if (svg_width <= 2 * svg_margin || svg_height <= 2 * svg_margin)
      throw Error(ErrorCode::Usage, "svg size must exceed twice the margin");
  }
};

namespace detail {

inline double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc{} || res.ptr != e || !std::isfinite(v))
    throw Error(ErrorCode::Usage, "invalid number for " + key + ": '" + text + "'");
  return v;
}

inline long parse_int(const std::string& key, const std::string& text) {
  long v = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc{} || res.ptr != e) throw Error(ErrorCode::Usage, "invalid integer for " + key + ": '" + text + "'");
  return v;
}

inline std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = io::detail::trim(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    out.push_back(parse_double(key, item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace detail

inline const std::set<std::string>& scenario_keys() {
  static const std::set<std::string> keys = {
      "k", "a", "g", "beta", "direction", "p0", "rho", "t-start", "t-end", "samples", "solution", "const1",
      "const2", "t0", "x0", "z0", "out", "format", "svg", "svg-width", "svg-height", "svg-margin", "z-min",
      "z-max", "grid", "x", "z", "t"};
  return keys;
}

/// Builds a configuration from key/value pairs; unknown keys are usage errors.
inline ScenarioConfig scenario_from(const io::KeyValues& kv) {
  using detail::parse_double;
  using detail::parse_int;
  ScenarioConfig cfg;
  for (const auto& [key, value] : kv) {
    if (!scenario_keys().contains(key)) throw Error(ErrorCode::Usage, "unknown configuration key: " + key);
  }
  auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (auto v = get("k")) {
    cfg.k_list = detail::parse_list("k", *v);
    cfg.wave.k = cfg.k_list.front();
  }
  if (auto v = get("a")) cfg.wave.a = parse_double("a", *v);
  if (auto v = get("g")) cfg.wave.g = parse_double("g", *v);
  if (auto v = get("p0")) cfg.wave.p0 = parse_double("p0", *v);
  if (auto v = get("rho")) cfg.wave.rho = parse_double("rho", *v);
  if (auto v = get("direction")) {
    const long d = parse_int("direction", *v);
    if (d != 1 && d != -1) throw Error(ErrorCode::Usage, "direction must be +1 or -1");
    cfg.wave.direction = d > 0 ? Direction::Right : Direction::Left;
  }
  if (auto v = get("beta")) cfg.beta = parse_double("beta", *v);
  if (auto v = get("t-start")) cfg.t_start = parse_double("t-start", *v);
  if (auto v = get("t-end")) cfg.t_end = parse_double("t-end", *v);
  if (auto v = get("samples")) {
    const long n = parse_int("samples", *v);
    if (n < 2) throw Error(ErrorCode::Usage, "samples must be at least 2");
    cfg.n_samples = static_cast<std::size_t>(n);
  }
  if (auto v = get("solution")) {
    if (*v == "peakon") cfg.solution = SolutionKind::Peakon;
    else if (*v == "elliptic") cfg.solution = SolutionKind::Elliptic;
    else if (*v == "oracle") cfg.solution = SolutionKind::Oracle;
    else throw Error(ErrorCode::Usage, "solution must be peakon, elliptic or oracle");
  }
  if (auto v = get("const1")) cfg.const1 = parse_double("const1", *v);
  if (auto v = get("const2")) cfg.const2 = parse_double("const2", *v);
  if (auto v = get("t0")) cfg.t0 = parse_double("t0", *v);
  if (auto v = get("x0")) cfg.x0 = parse_double("x0", *v);
  if (auto v = get("z0")) cfg.z0 = parse_double("z0", *v);
  if (auto v = get("out")) cfg.out = *v;
  if (auto v = get("format")) {
    if (*v == "csv") cfg.format = OutputFormat::Csv;
    else if (*v == "json") cfg.format = OutputFormat::Json;
    else if (*v == "svg") cfg.format = OutputFormat::Svg;
    else throw Error(ErrorCode::Usage, "format must be csv, json or svg");
  }
  if (auto v = get("svg")) cfg.svg = *v;
  if (auto v = get("svg-width")) cfg.svg_width = static_cast<int>(parse_int("svg-width", *v));
  if (auto v = get("svg-height")) cfg.svg_height = static_cast<int>(parse_int("svg-height", *v));
  if (auto v = get("svg-margin")) cfg.svg_margin = static_cast<int>(parse_int("svg-margin", *v));
  if (auto v = get("z-min")) cfg.z_min = parse_double("z-min", *v);
  if (auto v = get("z-max")) cfg.z_max = parse_double("z-max", *v);
  if (auto v = get("grid")) {
    const long n = parse_int("grid", *v);
    if (n < 1000) throw Error(ErrorCode::Usage, "grid must be at least 1000");
    cfg.grid = static_cast<std::size_t>(n);
  }
  if (auto v = get("x")) cfg.x = parse_double("x", *v);
  if (auto v = get("z")) cfg.z = parse_double("z", *v);
  if (auto v = get("t")) cfg.t = parse_double("t", *v);
  if (cfg.k_list.empty()) cfg.k_list.push_back(cfg.wave.k);
  return cfg;
}

/// File values first, then overrides (command-line flags) on top.
inline io::KeyValues merge_key_values(io::KeyValues base, const io::KeyValues& overrides) {
  for (const auto& [k, v] : overrides) base[k] = v;
  return base;
}

}  // namespace deepwave
