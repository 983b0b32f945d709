#pragma once

// Closed-form particle paths beneath the linear deep-water wave.
//
// Lab frame:     dx/dt = A e^{kz} cos(k(x - ct)),  dz/dt = A e^{kz} sin(k(x - ct))
// Moving frame:  X = k(x - ct), Z = kz
//                dX/dt = kA e^Z cos X - kc,  dZ/dt = kA e^Z sin X
//
// The moving-frame system conserves kA e^Z cos X - kcZ = -beta, so along a
// path cos X = (kcZ - beta) / (kA e^Z) and sin X = e^{-Z} (dZ/dt) / (kA).

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "deepwave/cubic.hpp"
#include "deepwave/error.hpp"
#include "deepwave/special_functions.hpp"
#include "deepwave/wave_field.hpp"

namespace deepwave {

enum class CaseTag { Peakon, Case1, Case2, OracleFull, OracleMovingFrame, OracleTruncated };

constexpr const char* to_string(CaseTag tag) noexcept {
  switch (tag) {
    case CaseTag::Peakon: return "peakon";
    case CaseTag::Case1: return "case1";
    case CaseTag::Case2: return "case2";
    case CaseTag::OracleFull: return "oracle_full";
    case CaseTag::OracleMovingFrame: return "oracle_moving_frame";
    case CaseTag::OracleTruncated: return "oracle_truncated";
  }
  return "unknown";
}

struct TrajectorySample {
  double t = 0.0;
  double x = 0.0;
  double z = 0.0;
  double X = 0.0;  // k (x - c t)
  double Z = 0.0;  // k z
};

struct TrajectorySeries {
  std::vector<TrajectorySample> samples;
  CaseTag case_tag = CaseTag::Case1;
  std::optional<double> period;
  std::optional<double> drift_per_period;
  std::vector<double> asymptote_times;
  std::vector<double> asymptote_x;  // abscissa approached before each asymptote time
  // Indices where a new continuous piece begins (asymptote gaps, phase wraps).
  std::vector<std::size_t> segment_starts;
  // Net winding of the continuous phase lift over one period, in units of 2 pi.
  std::optional<int> phase_winding;

  double min_Z() const {
    double m = INFINITY;
    for (const auto& s : samples) m = std::min(m, s.Z);
    return m;
  }
  double max_Z() const {
    double m = -INFINITY;
    for (const auto& s : samples) m = std::max(m, s.Z);
    return m;
  }
};

// ---------------------------------------------------------------------------
// Peakon-like solution: x = ct + const1, z = -(1/k) log|kA t + const2|.

struct PeakonParams {
  double const1 = 0.0;
  double const2 = 1.0;
};

struct Position {
  double x = 0.0;
  double z = 0.0;
};

inline double peakon_blowup_time(const WaveParams& params, const PeakonParams& pk) {
  return -pk.const2 / (params.k * trajectory_constant(params));
}

inline Position peakon_path(const WaveParams& params, const PeakonParams& pk, double t) {
  const double c = dispersion_speed(params);
  const double kA = params.k * params.a * c * params.k;
  const double w = kA * t + pk.const2;
  if (std::abs(w) < 1e-300)
    throw AsymptoteError("peakon evaluated at its vertical asymptote", peakon_blowup_time(params, pk));
  return {c * t + pk.const1, -std::log(std::abs(w)) / params.k};
}

/// Same path parameterised by the offset tau = t - t* from the blow-up time,
/// which avoids cancellation in kA t + const2 close to the asymptote.
inline Position peakon_path_from_blowup(const WaveParams& params, const PeakonParams& pk, double tau) {
  const double c = dispersion_speed(params);
  const double kA = params.k * params.a * c * params.k;
  const double w = kA * tau;
  if (std::abs(w) < 1e-300)
    throw AsymptoteError("peakon evaluated at its vertical asymptote", peakon_blowup_time(params, pk));
  const double t_star = peakon_blowup_time(params, pk);
  return {c * (t_star + tau) + pk.const1, -std::log(std::abs(w)) / params.k};
}

struct PeakonResiduals {
  double eq1 = 0.0;  // |x' - u|
  double eq2 = 0.0;  // |z' - v|
};

// x' = c and z' = -A / (kA t + const2) against the field at the same point.
// eq2 vanishes when sin(k const1) = -sign(kA t + const2); eq1 does not vanish
// in general and is reported as computed.
inline PeakonResiduals peakon_residuals(const WaveParams& params, const PeakonParams& pk, double t) {
  const double c = dispersion_speed(params);
  const double A = params.a * c * params.k;
  const double w = params.k * A * t + pk.const2;
  // e^{kz} = 1 / |w|; dividing last keeps -A/w and v bitwise comparable.
  const double phase = reduce_phase(params.k * pk.const1);
  const double u = A * std::cos(phase) / std::abs(w);
  const double v = A * std::sin(phase) / std::abs(w);
  return {std::abs(c - u), std::abs(-A / w - v)};
}

// ---------------------------------------------------------------------------
// Elliptic solutions of the truncated Z-equation.

namespace detail {

// Snaps phase / unit to the nearest integer when within rounding distance, so
// turning points are recognised from the phase and not from a noisy derivative.
inline bool near_integer(double q) noexcept { return std::abs(q - std::nearbyint(q)) < 1e-12; }

}  // namespace detail

inline double case1_Z(const Case1Reduction& red, double t, double t0) {
  const auto f = jacobi_sn_cn_dn(red.C1 * (t - t0), red.k1sq);
  return red.Z1 + (red.Z2 - red.Z1) * f.sn * f.sn;
}

inline double case1_dZdt(const Case1Reduction& red, double t, double t0) {
  const double u = red.C1 * (t - t0);
  if (detail::near_integer(u / complete_K(red.k1sq))) return 0.0;
  const auto f = jacobi_sn_cn_dn(u, red.k1sq);
  return 2.0 * (red.Z2 - red.Z1) * red.C1 * f.sn * f.cn * f.dn;
}

/// Time for Z to return to its value: sn^2 has period 2K.
inline double period_case1(const Case1Reduction& red) { return 2.0 * complete_K(red.k1sq) / red.C1; }

/// Guard on |C2 (t - t0) - 2K| (mod 4K) inside which Case 2 is not evaluated.
inline constexpr double kAsymptoteGuard = 1e-9;

namespace detail {

struct Case2Phase {
  double ratio = 0.0;   // (1 - cn) / (1 + cn)
  double dratio = 0.0;  // d ratio / du
  double offset = 0.0;  // distance of the argument from the nearest 2K (mod 4K)
  double nearest_asymptote_arg = 0.0;
};

// Near u = 2K the identities cn(2K + e) = -cn(e), sn(2K + e) = -sn(e) turn the
// cancelling 1 + cn into sn(e)^2 / (1 + cn(e)).
inline Case2Phase case2_phase(const Case2Reduction& red, double u) {
  const double K = complete_K(red.k2sq);
  const double period = 4.0 * K;
  const double ur = std::remainder(u, period);  // [-2K, 2K]
  const double base = u - ur;
  Case2Phase out;
  if (std::abs(ur) <= K) {
    const auto f = jacobi_sn_cn_dn(ur, red.k2sq);
    const double onep = 1.0 + f.cn;
    out.ratio = f.sn * f.sn / (onep * onep);
    out.dratio = 2.0 * f.sn * f.dn / (onep * onep);
    const double side = (ur >= 0.0) ? 1.0 : -1.0;
    out.offset = std::abs(ur - side * 2.0 * K);
    out.nearest_asymptote_arg = base + side * 2.0 * K;
  } else {
    const double side = (ur > 0.0) ? 1.0 : -1.0;
    const double eps = ur - side * 2.0 * K;
    out.offset = std::abs(eps);
    out.nearest_asymptote_arg = base + side * 2.0 * K;
    if (out.offset >= kAsymptoteGuard) {
      const auto f = jacobi_sn_cn_dn(eps, red.k2sq);
      const double onep = 1.0 + f.cn;
      const double s2 = f.sn * f.sn;
      out.ratio = onep * onep / s2;
      out.dratio = -2.0 * f.dn * onep * onep / (s2 * f.sn);
    }
  }
  return out;
}

}  // namespace detail

inline double case2_Z(const Case2Reduction& red, double t, double t0) {
  const auto ph = detail::case2_phase(red, red.C2 * (t - t0));
  if (ph.offset < kAsymptoteGuard)
    throw AsymptoteError("Case 2 solution evaluated at a vertical asymptote",
                         t0 + ph.nearest_asymptote_arg / red.C2);
  return red.Z0 + red.radius() * ph.ratio;
}

inline double case2_dZdt(const Case2Reduction& red, double t, double t0) {
  const double u = red.C2 * (t - t0);
  const auto ph = detail::case2_phase(red, u);
  if (ph.offset < kAsymptoteGuard)
    throw AsymptoteError("Case 2 solution evaluated at a vertical asymptote",
                         t0 + ph.nearest_asymptote_arg / red.C2);
  if (detail::near_integer(u / (4.0 * complete_K(red.k2sq)))) return 0.0;
  return red.radius() * red.C2 * ph.dratio;
}

/// Times t_n = t0 + (2 + 4n) K / C2 for n in [n_first, n_last].
inline std::vector<double> asymptote_times(const Case2Reduction& red, double t0, int n_first, int n_last) {
  std::vector<double> out;
  const double K = complete_K(red.k2sq);
  for (int n = n_first; n <= n_last; ++n) out.push_back(t0 + (2.0 + 4.0 * n) * K / red.C2);
  return out;
}

/// Asymptote times falling inside [t_start, t_end].
inline std::vector<double> asymptote_times_in(const Case2Reduction& red, double t0, double t_start,
                                              double t_end) {
  const double spacing = 4.0 * complete_K(red.k2sq) / red.C2;
  const double first = t0 + 0.5 * spacing;
  const int n_lo = static_cast<int>(std::ceil((t_start - first) / spacing));
  const int n_hi = static_cast<int>(std::floor((t_end - first) / spacing));
  return asymptote_times(red, t0, n_lo, n_hi);
}

// ---------------------------------------------------------------------------
// Z-series and assembly of (x, z).

struct ZSample {
  double t = 0.0;
  double Z = 0.0;
  double dZdt = 0.0;
};

struct ZSeries {
  std::vector<ZSample> samples;
  std::vector<double> gaps;  // asymptote times skipped between samples
};

inline std::vector<double> uniform_times(double t_start, double t_end, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::ParameterDomain, "at least two samples are required");
  if (!(t_end > t_start)) throw Error(ErrorCode::ParameterDomain, "t_end must exceed t_start");
  std::vector<double> ts(n);
  const double h = (t_end - t_start) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) ts[i] = t_start + h * static_cast<double>(i);
  ts.back() = t_end;
  return ts;
}

inline ZSeries sample_case1(const Case1Reduction& red, double t0, std::span<const double> times) {
  ZSeries s;
  s.samples.reserve(times.size());
  for (double t : times) s.samples.push_back({t, case1_Z(red, t, t0), case1_dZdt(red, t, t0)});
  return s;
}

inline ZSeries sample_case2(const Case2Reduction& red, double t0, std::span<const double> times) {
  ZSeries s;
  if (times.empty()) return s;
  s.gaps = asymptote_times_in(red, t0, times.front(), times.back());
  for (double t : times) {
    const auto ph = detail::case2_phase(red, red.C2 * (t - t0));
    if (ph.offset < kAsymptoteGuard) continue;
    s.samples.push_back({t, case2_Z(red, t, t0), case2_dZdt(red, t, t0)});
  }
  return s;
}

/// Moving-frame phase X from cos X = (kcZ - beta)/(kA e^Z) and
/// sin X = e^{-Z} Z' / (kA), principal value in (-pi, pi].
inline double moving_frame_phase(const WaveParams& params, double beta, double Z, double dZdt) {
  const double k = params.k;
  const double c = dispersion_speed(params);
  const double kAe = k * params.a * c * k * std::exp(Z);
  const double cosX = (k * c * Z - beta) / kAe;
  const double arg = 1.0 - cosX * cosX;
  if (arg < -1e-9)
    throw Error(ErrorCode::ContractViolation,
                "Z outside the admissible band: |kcZ - beta| exceeds |kA| e^Z (wrong beta or case)");
  const double sinX = dZdt / kAe;
  return std::atan2(sinX, cosX);
}

inline TrajectorySeries assemble_xz(const WaveParams& params, double beta, const ZSeries& zs,
                                    CaseTag tag) {
  const double c = dispersion_speed(params);
  const double k = params.k;
  TrajectorySeries out;
  out.case_tag = tag;
  out.asymptote_times = zs.gaps;
  out.samples.reserve(zs.samples.size());
  std::size_t gap = 0;
  for (std::size_t i = 0; i < zs.samples.size(); ++i) {
    const auto& s = zs.samples[i];
    const double X = moving_frame_phase(params, beta, s.Z, s.dZdt);
    out.samples.push_back({s.t, c * s.t + X / k, s.Z / k, X, s.Z});
    bool starts = (i == 0);
    while (gap < zs.gaps.size() && zs.gaps[gap] <= s.t) {
      if (i > 0 && zs.gaps[gap] > zs.samples[i - 1].t) starts = true;
      ++gap;
    }
    if (i > 0 && std::abs(X - out.samples[i - 1].X) > std::numbers::pi) starts = true;
    if (starts) out.segment_starts.push_back(i);
  }
  return out;
}

/// Counts net 2 pi wraps of the continuous lift of X over one Z-period.
inline int phase_winding(const WaveParams& params, double beta, double period,
                         const std::function<ZSample(double)>& at, double t_start) {
  constexpr int kSteps = 4096;
  double total = 0.0;
  double prev = moving_frame_phase(params, beta, at(t_start).Z, at(t_start).dZdt);
  for (int i = 1; i <= kSteps; ++i) {
    const auto s = at(t_start + period * i / kSteps);
    const double cur = moving_frame_phase(params, beta, s.Z, s.dZdt);
    total += reduce_phase(cur - prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

struct BetaCandidates {
  double beta_plus = 0.0;   // kcZ - sqrt(k^2A^2 e^{2Z} - Z'^2)
  double beta_minus = 0.0;  // kcZ + sqrt(k^2A^2 e^{2Z} - Z'^2)
};

inline BetaCandidates beta_from_initial(const WaveParams& params, double Z_init, double dZdt_init) {
  const double k = params.k;
  const double c = dispersion_speed(params);
  const double kA = k * params.a * c * k;
  const double env = std::abs(kA) * std::exp(Z_init);
  const double speed = std::abs(dZdt_init);
  const double disc = (env - speed) * (env + speed);
  if (disc < 0.0)
    throw Error(ErrorCode::ContractViolation, "vertical velocity exceeds the field envelope |kA| e^Z");
  const double root = std::sqrt(disc);
  return {k * c * Z_init - root, k * c * Z_init + root};
}

/// Quadrature of u = A e^Z cos X along the sampled moving-frame path
/// (trapezoid rule), started from the first sample's x. Used to cross-check
/// the stitched x(t) of the closed forms.
inline std::vector<double> quadrature_x(const WaveParams& params, const TrajectorySeries& series) {
  const double A = trajectory_constant(params);
  std::vector<double> xs;
  if (series.samples.empty()) return xs;
  xs.reserve(series.samples.size());
  xs.push_back(series.samples.front().x);
  auto u_at = [&](const TrajectorySample& s) { return A * std::exp(s.Z) * std::cos(s.X); };
  for (std::size_t i = 1; i < series.samples.size(); ++i) {
    const auto& a = series.samples[i - 1];
    const auto& b = series.samples[i];
    xs.push_back(xs.back() + 0.5 * (b.t - a.t) * (u_at(a) + u_at(b)));
  }
  return xs;
}

// ---------------------------------------------------------------------------
// Whole trajectories with metadata.

inline TrajectorySeries elliptic_trajectory(const WaveParams& params, double beta, double t0,
                                            std::span<const double> times) {
  const auto cubic = build_cubic(params, beta);
  const auto red = classify_roots(cubic, params);
  const double c = dispersion_speed(params);
  const double start = times.empty() ? t0 : times.front();

  if (const auto* r1 = std::get_if<Case1Reduction>(&red)) {
    auto series = assemble_xz(params, beta, sample_case1(*r1, t0, times), CaseTag::Case1);
    const double T = period_case1(*r1);
    series.period = T;
    series.drift_per_period = c * T;
    series.phase_winding = phase_winding(
        params, beta, T,
        [&](double t) { return ZSample{t, case1_Z(*r1, t, t0), case1_dZdt(*r1, t, t0)}; }, start);
    return series;
  }

  const auto& r2 = std::get<Case2Reduction>(red);
  auto series = assemble_xz(params, beta, sample_case2(r2, t0, times), CaseTag::Case2);
  const double T = 4.0 * complete_K(r2.k2sq) / r2.C2;
  series.period = T;
  series.drift_per_period = c * T;
  // Approaching an asymptote Z' > 0, so X tends to sign(A) pi / 2.
  const double A = trajectory_constant(params);
  for (double ta : series.asymptote_times)
    series.asymptote_x.push_back(c * ta + std::copysign(0.5 * std::numbers::pi, A) / params.k);
  return series;
}

inline TrajectorySeries peakon_trajectory(const WaveParams& params, const PeakonParams& pk,
                                          std::span<const double> times) {
  TrajectorySeries out;
  out.case_tag = CaseTag::Peakon;
  const double c = dispersion_speed(params);
  const double t_star = peakon_blowup_time(params, pk);
  if (!times.empty() && t_star >= times.front() && t_star <= times.back()) {
    out.asymptote_times.push_back(t_star);
    out.asymptote_x.push_back(c * t_star + pk.const1);
  }
  for (double t : times) {
    const double w = params.k * trajectory_constant(params) * t + pk.const2;
    if (std::abs(w) < 1e-300) continue;
    const auto pos = peakon_path(params, pk, t);
    const std::size_t i = out.samples.size();
    if (i == 0 || (out.samples.back().t < t_star && t > t_star)) out.segment_starts.push_back(i);
    out.samples.push_back({t, pos.x, pos.z, params.k * (pos.x - c * t), params.k * pos.z});
  }
  return out;
}

}  // namespace deepwave
