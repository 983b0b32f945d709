#pragma once

// Linear deep-water gravity wave in physical variables.
//
//   c   = direction * sqrt(g / k)
//   A   = a c k
//   eta = a cos(k(x - ct))
//   u   = A e^{kz} cos(k(x - ct))
//   v   = A e^{kz} sin(k(x - ct))
//   p   = p0 - rho g z + rho a g e^{kz} cos(k(x - ct))
//
// Density defaults to 1 (non-dimensional form).

#include <cmath>
#include <numbers>
#include <string>

#include "deepwave/error.hpp"

namespace deepwave {

enum class Direction : int { Right = 1, Left = -1 };

constexpr double sign_of(Direction d) noexcept { return static_cast<double>(static_cast<int>(d)); }

struct WaveParams {
  double k = 1.0;  // wavenumber
  double a = 0.1;  // amplitude
  double g = 9.8;
  Direction direction = Direction::Right;
  double p0 = 0.0;
  double rho = 1.0;

  void validate() const {
    if (!(k > 0.0) || !std::isfinite(k))
      throw Error(ErrorCode::ParameterDomain, "wavenumber k must be positive and finite");
    if (!(a > 0.0) || !std::isfinite(a))
      throw Error(ErrorCode::ParameterDomain, "amplitude a must be positive and finite");
    if (!(g > 0.0) || !std::isfinite(g))
      throw Error(ErrorCode::ParameterDomain, "gravity g must be positive and finite");
    if (!(rho > 0.0) || !std::isfinite(rho))
      throw Error(ErrorCode::ParameterDomain, "density rho must be positive and finite");
    if (!std::isfinite(p0)) throw Error(ErrorCode::ParameterDomain, "p0 must be finite");
  }

  static WaveParams make(double k, double a, double g, Direction dir = Direction::Right) {
    WaveParams p{k, a, g, dir};
    p.validate();
    return p;
  }

  double wavelength() const noexcept { return 2.0 * std::numbers::pi / k; }
};

inline double dispersion_speed(const WaveParams& params) {
  params.validate();
  return sign_of(params.direction) * std::sqrt(params.g / params.k);
}

inline double trajectory_constant(const WaveParams& params) {
  return params.a * dispersion_speed(params) * params.k;
}

/// Temporal period of the wave seen at a fixed point, 2 pi / (k |c|).
inline double wave_period(const WaveParams& params) {
  return 2.0 * std::numbers::pi / (params.k * std::abs(dispersion_speed(params)));
}

/// Reduces an angle into [-pi, pi).
inline double reduce_phase(double phase) noexcept {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phase + std::numbers::pi, two_pi);
  if (r < 0.0) r += two_pi;
  return r - std::numbers::pi;
}

struct FieldSample {
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;
  double eta = 0.0;
  bool above_surface = false;  // z > eta(x, t); the formula is still evaluated
};

inline FieldSample evaluate_field(const WaveParams& params, double x, double z, double t) {
  const double c = dispersion_speed(params);
  const double A = params.a * c * params.k;
  const double phase = reduce_phase(params.k * (x - c * t));
  const double cs = std::cos(phase);
  const double sn = std::sin(phase);
  const double envelope = std::exp(params.k * z);

  FieldSample s;
  s.u = A * envelope * cs;
  s.v = A * envelope * sn;
  s.eta = params.a * cs;
  s.p = params.p0 - params.rho * params.g * z + params.rho * params.a * params.g * envelope * cs;
  s.above_surface = z > s.eta;
  return s;
}

}  // namespace deepwave
