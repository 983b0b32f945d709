#pragma once

// Cubic truncation of the Z-equation and its Legendre reduction.
//
// With the Taylor series of e^{2Z} cut after Z^3 the right-hand side of
//   (dZ/dt)^2 = k^2 A^2 e^{2Z} - (k c Z - beta)^2
// becomes P(Z) = a3 Z^3 + a2 Z^2 + a1 Z + a0 with
//   a3 = 4 k^2 A^2 / 3,  a2 = k^2 (2A^2 - c^2),
//   a1 = 2k (k A^2 + beta c),  a0 = k^2 A^2 - beta^2.
//
// Three real roots (Case1): Z oscillates in [Z1, Z2] and
//   Z = Z2 sn^2(C1 t; m1) + Z1 cn^2(C1 t; m1),
//   m1 = (Z2 - Z1)/(Z3 - Z1),  C1 = k|A| sqrt(Z3 - Z1) / sqrt(3).
// One real root (Case2): P = a3 (Z - Z0)(Z^2 + pZ + q) and
//   Z = Z0 + r (1 - cn)/(1 + cn),  r = sqrt(Z0^2 + p Z0 + q),
//   m2 = (1 - (Z0 + p/2)/r)/2,  C2 = 2 k|A| r^{1/2} / sqrt(3).

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <variant>

#include "deepwave/error.hpp"
#include "deepwave/wave_field.hpp"

namespace deepwave {

struct CubicCoeffs {
  double a3 = 0.0;
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;

  double operator()(double z) const noexcept { return ((a3 * z + a2) * z + a1) * z + a0; }
  double derivative(double z) const noexcept { return (3.0 * a3 * z + 2.0 * a2) * z + a1; }

  double scale() const noexcept {
    return std::max({std::abs(a3), std::abs(a2), std::abs(a1), std::abs(a0)});
  }

  double discriminant() const noexcept {
    const double a = a3, b = a2, c = a1, d = a0;
    return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c -
           27.0 * a * a * d * d;
  }
};

inline CubicCoeffs build_cubic(const WaveParams& params, double beta) {
  const double k = params.k;
  const double c = dispersion_speed(params);
  const double A = params.a * c * k;
  const double kA2 = k * k * A * A;
  return CubicCoeffs{4.0 * kA2 / 3.0, k * k * (2.0 * A * A - c * c), 2.0 * k * (k * A * A + beta * c),
                     kA2 - beta * beta};
}

struct Case1Reduction {
  double Z1 = 0.0, Z2 = 0.0, Z3 = 0.0;  // Z1 < Z2 < Z3
  double k1sq = 0.0;                     // parameter m of sn, cn
  double C1 = 0.0;                       // time scale, positive
};

struct Case2Reduction {
  double Z0 = 0.0;
  double p = 0.0, q = 0.0;  // Z^2 + pZ + q has no real roots
  double k2sq = 0.0;
  double C2 = 0.0;

  double radius() const noexcept { return std::sqrt(Z0 * Z0 + p * Z0 + q); }
};

using CubicReduction = std::variant<Case1Reduction, Case2Reduction>;

inline Case1Reduction reduce_case1(double Z1, double Z2, double Z3, double k, double A) {
  if (!(Z1 < Z2) || !(Z2 < Z3))
    throw Error(ErrorCode::DegenerateRoots, "Case 1 reduction needs strictly ordered roots Z1 < Z2 < Z3");
  Case1Reduction r{Z1, Z2, Z3};
  r.k1sq = (Z2 - Z1) / (Z3 - Z1);
  r.C1 = k * std::abs(A) * std::sqrt(Z3 - Z1) / std::sqrt(3.0);
  return r;
}

inline Case1Reduction reduce_case1(double Z1, double Z2, double Z3, const WaveParams& params) {
  return reduce_case1(Z1, Z2, Z3, params.k, trajectory_constant(params));
}

inline Case2Reduction reduce_case2(double Z0, double p, double q, double k, double A) {
  if (p * p - 4.0 * q >= 0.0)
    throw Error(ErrorCode::ContractViolation,
                "Case 2 reduction needs a quadratic factor with negative discriminant");
  Case2Reduction r{Z0, p, q};
  const double rr = r.radius();
  r.k2sq = 0.5 * (1.0 - (Z0 + 0.5 * p) / rr);
  r.C2 = 2.0 * k * std::abs(A) * std::sqrt(rr) / std::sqrt(3.0);
  return r;
}

inline Case2Reduction reduce_case2(double Z0, double p, double q, const WaveParams& params) {
  return reduce_case2(Z0, p, q, params.k, trajectory_constant(params));
}

namespace detail {

// Newton polishing on the cubic; keeps the iterate with the smallest |P|.
inline double polish_root(const CubicCoeffs& P, double z) {
  double best = z;
  double best_val = std::abs(P(z));
  for (int i = 0; i < 8 && best_val > 0.0; ++i) {
    const double d = P.derivative(z);
    if (d == 0.0) break;
    z -= P(z) / d;
    const double v = std::abs(P(z));
    if (v < best_val) {
      best = z;
      best_val = v;
    } else if (v >= best_val) {
      break;
    }
  }
  return best;
}

}  // namespace detail

struct CubicRoots {
  int real_count = 0;            // 1 or 3
  std::array<double, 3> real{};  // ascending, first real_count valid
};

// Closed-form roots: trigonometric method for three real roots, Cardano for
// one. Each root is Newton-polished.
inline CubicRoots solve_cubic(const CubicCoeffs& P) {
  if (P.a3 == 0.0) throw Error(ErrorCode::ParameterDomain, "leading coefficient must be nonzero");
  const double scale = P.scale();
  const double disc = P.discriminant();
  if (std::abs(disc) <= 1e-12 * std::pow(scale, 4))
    throw Error(ErrorCode::DegenerateRoots, "cubic has a repeated root (vanishing discriminant)");

  const double b = P.a2 / P.a3, c = P.a1 / P.a3, d = P.a0 / P.a3;
  const double shift = b / 3.0;
  const double pp = c - b * b / 3.0;
  const double qq = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

  CubicRoots out;
  if (disc > 0.0) {
    const double rad = 2.0 * std::sqrt(-pp / 3.0);
    double arg = 3.0 * qq / (pp * rad);
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int j = 0; j < 3; ++j) {
      out.real[j] = detail::polish_root(P, rad * std::cos(theta - 2.0 * std::numbers::pi * j / 3.0) - shift);
    }
    std::sort(out.real.begin(), out.real.end());
    out.real_count = 3;
  } else {
    const double D = qq * qq / 4.0 + pp * pp * pp / 27.0;
    const double s = std::sqrt(D);
    const double u = std::cbrt(-0.5 * qq - std::copysign(s, qq));
    const double y = (u != 0.0) ? u - pp / (3.0 * u) : 0.0;
    out.real[0] = detail::polish_root(P, y - shift);
    out.real_count = 1;
  }
  return out;
}

inline CubicReduction classify_roots(const CubicCoeffs& P, double k, double A) {
  const CubicRoots roots = solve_cubic(P);
  if (roots.real_count == 3) {
    return reduce_case1(roots.real[0], roots.real[1], roots.real[2], k, A);
  }
  // Deflate: P / a3 = (Z - Z0)(Z^2 + pZ + q).
  const double Z0 = roots.real[0];
  const double b = P.a2 / P.a3, c = P.a1 / P.a3, d = P.a0 / P.a3;
  const double p = b + Z0;
  // Two routes to q; pick the better conditioned one.
  const double q = (std::abs(Z0) > 1.0) ? -d / Z0 : c + Z0 * p;
  return reduce_case2(Z0, p, q, k, A);
}

inline CubicReduction classify_roots(const CubicCoeffs& P, const WaveParams& params) {
  return classify_roots(P, params.k, trajectory_constant(params));
}

inline bool is_case1(const CubicReduction& r) noexcept { return std::holds_alternative<Case1Reduction>(r); }

}  // namespace deepwave
