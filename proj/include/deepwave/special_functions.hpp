#pragma once

// Arithmetic-geometric mean, complete elliptic integral of the first kind and
// the Jacobi elliptic functions sn, cn, dn.
//
// Every function here takes the PARAMETER m = k^2 (squared modulus), the same
// convention as Mathematica's JacobiSN[u, m] and Boost's jacobi_elliptic with
// k = sqrt(m). Callers holding a modulus must square it first.

#include <array>
#include <cmath>
#include <numbers>

#include "deepwave/error.hpp"

namespace deepwave {

/// Squared elliptic modulus, 0 <= m < 1.
class EllipticParameter {
 public:
  explicit EllipticParameter(double m) : m_(m) {
    if (!(m >= 0.0) || !(m < 1.0))
      throw Error(ErrorCode::ParameterDomain, "elliptic parameter m must satisfy 0 <= m < 1");
  }

  double value() const noexcept { return m_; }
  double complement() const noexcept { return 1.0 - m_; }

  // Within this distance of an endpoint the trig / hyperbolic limits are used.
  static constexpr double kDegenerateBand = 1e-12;

  bool near_zero() const noexcept { return m_ < kDegenerateBand; }
  bool near_one() const noexcept { return 1.0 - m_ < kDegenerateBand; }

 private:
  double m_;
};

inline double agm(double a0, double b0) {
  if (!(a0 > 0.0) || !(b0 > 0.0) || !std::isfinite(a0) || !std::isfinite(b0))
    throw Error(ErrorCode::ParameterDomain, "agm requires two positive finite arguments");
  double a = a0, b = b0;
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-15 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return a;
}

/// K(m) = pi / (2 agm(1, sqrt(1 - m))).
inline double complete_K(EllipticParameter m) {
  return std::numbers::pi / (2.0 * agm(1.0, std::sqrt(m.complement())));
}

inline double complete_K(double m) { return complete_K(EllipticParameter(m)); }

struct JacobiTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
};

namespace detail {

// Descending Landen / AGM phase recursion for the amplitude am(u | m).
// Valid for 0 < m < 1 and moderate |u|; callers reduce u first.
inline double jacobi_amplitude(double u, double m) {
  constexpr int kMaxLevels = 32;
  std::array<double, kMaxLevels + 1> a{}, c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = std::sqrt(m);
  int n = 0;
  while (n < kMaxLevels && std::abs(c[n]) > 1e-16 * a[n]) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) {
    phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  }
  return phi;
}

}  // namespace detail

inline JacobiTriple jacobi_sn_cn_dn(double u, EllipticParameter param) {
  const double m = param.value();
  if (param.near_zero()) return {std::sin(u), std::cos(u), 1.0};
  if (param.near_one()) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }

  // Reduce into (-2K, 2K]; sn, cn have period 4K.
  const double quarter = complete_K(param);
  const double period = 4.0 * quarter;
  double r = u;
  if (std::abs(r) > period) {
    r = std::remainder(r, period);
  }

  const double phi = detail::jacobi_amplitude(r, m);
  JacobiTriple out;
  out.sn = std::sin(phi);
  out.cn = std::cos(phi);
  out.dn = std::sqrt(1.0 - m * out.sn * out.sn);
  return out;
}

inline JacobiTriple jacobi_sn_cn_dn(double u, double m) {
  return jacobi_sn_cn_dn(u, EllipticParameter(m));
}

}  // namespace deepwave
