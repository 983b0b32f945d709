#pragma once

// Direct numerical integration of the particle-path systems. Nothing here uses
// elliptic functions, so it serves as ground truth for the closed forms.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "deepwave/cubic.hpp"
#include "deepwave/error.hpp"
#include "deepwave/trajectories.hpp"
#include "deepwave/wave_field.hpp"

namespace deepwave {

enum class IntegratorMethod { RK4Fixed, RK45Adaptive };

struct IntegratorConfig {
  double dt = 1e-3;
  IntegratorMethod method = IntegratorMethod::RK4Fixed;
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double t_start = 0.0;
  double t_end = 1.0;

  void validate() const {
    if (!(dt > 0.0)) throw Error(ErrorCode::ParameterDomain, "integrator dt must be positive");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw Error(ErrorCode::ParameterDomain, "integrator tolerances must be positive");
    if (!(t_end > t_start)) throw Error(ErrorCode::ParameterDomain, "integrator t_end must exceed t_start");
  }

  /// Fixed RK4 with dt = T_wave / 2000 over [t_start, t_end].
  static IntegratorConfig standard(const WaveParams& params, double t_start, double t_end) {
    IntegratorConfig cfg;
    cfg.dt = wave_period(params) / 2000.0;
    cfg.t_start = t_start;
    cfg.t_end = t_end;
    return cfg;
  }
};

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
using Rhs = std::function<State<N>(double, const State<N>&)>;

// Returns true to stop integration; the state passed is the post-step state.
template <std::size_t N>
using StopCondition = std::function<bool(const State<N>&)>;

template <std::size_t N>
struct OdeResult {
  std::vector<double> times;
  std::vector<State<N>> states;
  std::optional<double> event_time;
  std::optional<State<N>> event_state;
};

namespace detail {

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, const State<N>& k) {
  State<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * k[i];
  return out;
}

template <std::size_t N>
State<N> rk4_step(const Rhs<N>& f, double t, const State<N>& y, double h) {
  const auto k1 = f(t, y);
  const auto k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const auto k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const auto k4 = f(t + h, axpy(y, h, k3));
  State<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

// Dormand-Prince 5(4); returns the 5th-order solution and the error estimate.
template <std::size_t N>
std::pair<State<N>, State<N>> dopri_step(const Rhs<N>& f, double t, const State<N>& y, double h) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  State<N> tmp;
  const auto k1 = f(t, y);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
  const auto k2 = f(t + c2 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  const auto k3 = f(t + c3 * h, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  const auto k4 = f(t + c4 * h, tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  const auto k5 = f(t + c5 * h, tmp);
  for (std::size_t i = 0; i < N; ++i)
    tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  const auto k6 = f(t + h, tmp);
  State<N> y5;
  for (std::size_t i = 0; i < N; ++i)
    y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  const auto k7 = f(t + h, y5);
  State<N> err;
  for (std::size_t i = 0; i < N; ++i)
    err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
  return {y5, err};
}

}  // namespace detail

// Fixed-step RK4 on the grid t_start + n dt. A requested output time between
// grid points is reached by a partial step from the preceding grid state, so
// the grid itself does not depend on the output times.
template <std::size_t N>
OdeResult<N> integrate_rk4(const Rhs<N>& f, const State<N>& y0, const IntegratorConfig& cfg,
                           std::span<const double> out_times, const StopCondition<N>& stop = {}) {
  cfg.validate();
  OdeResult<N> res;
  double t = cfg.t_start;
  State<N> y = y0;
  std::size_t n = 0;
  for (double tau : out_times) {
    if (tau < cfg.t_start) throw Error(ErrorCode::ParameterDomain, "output time before t_start");
    while (cfg.t_start + static_cast<double>(n + 1) * cfg.dt <= tau + 1e-9 * cfg.dt) {
      const double t_next = cfg.t_start + static_cast<double>(n + 1) * cfg.dt;
      y = detail::rk4_step(f, t, y, t_next - t);
      t = t_next;
      ++n;
      if (stop && stop(y)) {
        res.event_time = t;
        res.event_state = y;
        return res;
      }
    }
    const double h = tau - t;
    res.times.push_back(tau);
    res.states.push_back(h > 0.0 ? detail::rk4_step(f, t, y, h) : y);
  }
  return res;
}

// Adaptive Dormand-Prince. Steps are clipped to land on every output time;
// a stop condition is located by bisection on the step length.
template <std::size_t N>
OdeResult<N> integrate_rk45(const Rhs<N>& f, const State<N>& y0, const IntegratorConfig& cfg,
                            std::span<const double> out_times, const StopCondition<N>& stop = {}) {
  cfg.validate();
  OdeResult<N> res;
  double t = cfg.t_start;
  State<N> y = y0;
  double h = cfg.dt;

  auto error_norm = [&](const State<N>& yold, const State<N>& ynew, const State<N>& err) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(yold[i]), std::abs(ynew[i]));
      acc = std::max(acc, std::abs(err[i]) / sc);
    }
    return acc;
  };

  for (double tau : out_times) {
    if (tau < cfg.t_start) throw Error(ErrorCode::ParameterDomain, "output time before t_start");
    while (t < tau) {
      if (h < 1e-14) throw StiffnessFailure("adaptive step underflow", t, y[0], N > 1 ? y[1] : 0.0);
      const bool last = t + h >= tau;
      const double step = last ? tau - t : h;
      const auto [ynew, err] = detail::dopri_step(f, t, y, step);
      const double en = error_norm(y, ynew, err);
      bool finite = true;
      for (double v : ynew) finite = finite && std::isfinite(v);
      if (!finite || en > 1.0) {
        h = step * std::max(0.1, finite ? 0.9 * std::pow(en, -0.2) : 0.1);
        continue;
      }
      if (stop && stop(ynew)) {
        // Shrink the step until the condition is bracketed to rounding.
        double lo = 0.0, hi = step;
        for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(t)); ++i) {
          const double mid = 0.5 * (lo + hi);
          if (stop(detail::dopri_step(f, t, y, mid).first)) hi = mid;
          else lo = mid;
        }
        res.event_time = t + hi;
        res.event_state = detail::dopri_step(f, t, y, hi).first;
        return res;
      }
      t = last ? tau : t + step;
      y = ynew;
      if (!last) h = step * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(en, 1e-16), -0.2)));
    }
    res.times.push_back(tau);
    res.states.push_back(y);
  }
  return res;
}

template <std::size_t N>
OdeResult<N> integrate(const Rhs<N>& f, const State<N>& y0, const IntegratorConfig& cfg,
                       std::span<const double> out_times, const StopCondition<N>& stop = {}) {
  return cfg.method == IntegratorMethod::RK4Fixed ? integrate_rk4(f, y0, cfg, out_times, stop)
                                                  : integrate_rk45(f, y0, cfg, out_times, stop);
}

// ---------------------------------------------------------------------------
// Particle-path systems.

/// dx/dt = A e^{kz} cos(k(x - ct)), dz/dt = A e^{kz} sin(k(x - ct)).
inline TrajectorySeries integrate_full(const WaveParams& params, double x0, double z0,
                                       const IntegratorConfig& cfg, std::span<const double> times) {
  const double k = params.k;
  const double c = dispersion_speed(params);
  const double A = trajectory_constant(params);
  Rhs<2> f = [=](double t, const State<2>& y) -> State<2> {
    const double phase = k * (y[0] - c * t);
    const double env = A * std::exp(k * y[1]);
    return {env * std::cos(phase), env * std::sin(phase)};
  };
  const auto res = integrate<2>(f, {x0, z0}, cfg, times);
  TrajectorySeries out;
  out.case_tag = CaseTag::OracleFull;
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    const double t = res.times[i];
    const auto& y = res.states[i];
    out.samples.push_back({t, y[0], y[1], k * (y[0] - c * t), k * y[1]});
  }
  if (!out.samples.empty()) out.segment_starts.push_back(0);
  return out;
}

/// dX/dt = kA e^Z cos X - kc, dZ/dt = kA e^Z sin X.
inline TrajectorySeries integrate_moving_frame(const WaveParams& params, double X0, double Z0,
                                               const IntegratorConfig& cfg, std::span<const double> times) {
  const double k = params.k;
  const double c = dispersion_speed(params);
  const double kA = k * trajectory_constant(params);
  Rhs<2> f = [=](double, const State<2>& y) -> State<2> {
    const double env = kA * std::exp(y[1]);
    return {env * std::cos(y[0]) - k * c, env * std::sin(y[0])};
  };
  const auto res = integrate<2>(f, {X0, Z0}, cfg, times);
  TrajectorySeries out;
  out.case_tag = CaseTag::OracleMovingFrame;
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    const double t = res.times[i];
    const auto& y = res.states[i];
    out.samples.push_back({t, c * t + y[0] / k, y[1] / k, y[0], y[1]});
  }
  if (!out.samples.empty()) out.segment_starts.push_back(0);
  return out;
}

/// dZ/dt along a moving-frame oracle series, from the right-hand side.
inline ZSeries z_series_of(const WaveParams& params, const TrajectorySeries& series) {
  const double kA = params.k * trajectory_constant(params);
  ZSeries out;
  for (const auto& s : series.samples) out.samples.push_back({s.t, s.Z, kA * std::exp(s.Z) * std::sin(s.X)});
  return out;
}

inline constexpr double kEscapeThreshold = 1e3;

struct TruncatedResult {
  ZSeries series;
  std::optional<double> escape_time;  // first time |Z| exceeds the threshold
  std::optional<ZSample> escape_state;
};

/// Z'' = P'(Z) / 2 as a first-order system; stops once |Z| > 10^3.
inline TruncatedResult integrate_truncated(const CubicCoeffs& P, double Z0, double dZdt0,
                                           const IntegratorConfig& cfg, std::span<const double> times) {
  Rhs<2> f = [P](double, const State<2>& y) -> State<2> { return {y[1], 0.5 * P.derivative(y[0])}; };
  StopCondition<2> escape = [](const State<2>& y) { return std::abs(y[0]) > kEscapeThreshold; };
  const auto res = integrate<2>(f, {Z0, dZdt0}, cfg, times, escape);
  TruncatedResult out;
  for (std::size_t i = 0; i < res.times.size(); ++i)
    out.series.samples.push_back({res.times[i], res.states[i][0], res.states[i][1]});
  if (res.event_time) {
    out.escape_time = res.event_time;
    out.escape_state = ZSample{*res.event_time, (*res.event_state)[0], (*res.event_state)[1]};
  }
  return out;
}

namespace detail {

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <typename F>
double integrate_simpson(F&& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 50);
}

/// Blow-up time extrapolated from an escape state (t_e, Z_e, Z'_e > 0):
/// t_e + integral_{Z_e}^inf dZ / sqrt(P(Z) + E), E = Z'_e^2 - P(Z_e).
/// Substituting Z = Z_e / s^2 makes the integrand smooth on (0, 1].
inline double blowup_time_estimate(const CubicCoeffs& P, const ZSample& escape) {
  const double Ze = escape.Z;
  const double energy = escape.dZdt * escape.dZdt - P(Ze);
  auto integrand = [&](double s) {
    if (s == 0.0) return 2.0 / std::sqrt(P.a3 * Ze);
    const double Z = Ze / (s * s);
    return 2.0 * Ze / (s * s * s) / std::sqrt(P(Z) + energy);
  };
  return escape.t + integrate_simpson(integrand, 0.0, 1.0, 1e-14);
}

struct ResidualReport {
  double max_residual_eq1 = 0.0;
  double max_residual_eq2 = 0.0;
  double rms_residual = 0.0;
  std::size_t n_samples = 0;
  std::vector<std::pair<double, double>> excluded_windows;
};

/// Along a Z-series:
///   eq1 = |Z'^2 - (k^2A^2 e^{2Z} - (kcZ - beta)^2)|   (untruncated relation)
///   eq2 = |Z'^2 - P(Z)|                               (cubic truncation)
/// Samples inside +-window of a recorded gap are skipped and the window listed.
inline ResidualReport residual_full_Z_ode(const WaveParams& params, double beta, const ZSeries& series,
                                          double window = 0.0) {
  const double k = params.k;
  const double c = dispersion_speed(params);
  const double kA = k * trajectory_constant(params);
  const auto P = build_cubic(params, beta);
  ResidualReport rep;
  if (!series.samples.empty()) {
    const double lo = series.samples.front().t, hi = series.samples.back().t;
    for (double g : series.gaps)
      if (window > 0.0) rep.excluded_windows.emplace_back(std::max(lo, g - window), std::min(hi, g + window));
  }
  double sumsq = 0.0;
  for (const auto& s : series.samples) {
    const bool excluded = std::any_of(rep.excluded_windows.begin(), rep.excluded_windows.end(),
                                      [&](const auto& w) { return s.t >= w.first && s.t <= w.second; });
    if (excluded) continue;
    const double d2 = s.dZdt * s.dZdt;
    const double lin = k * c * s.Z - beta;
    const double r1 = std::abs(d2 - (kA * kA * std::exp(2.0 * s.Z) - lin * lin));
    const double r2 = std::abs(d2 - P(s.Z));
    rep.max_residual_eq1 = std::max(rep.max_residual_eq1, r1);
    rep.max_residual_eq2 = std::max(rep.max_residual_eq2, r2);
    sumsq += r1 * r1 + r2 * r2;
    ++rep.n_samples;
  }
  if (rep.n_samples > 0) rep.rms_residual = std::sqrt(sumsq / (2.0 * static_cast<double>(rep.n_samples)));
  return rep;
}

/// Ratios e(h)/e(h/2) of the RK4 end-state error on the moving-frame system
/// for h = dt, dt/2, dt/4, dt/8 against a dt/128 reference.
inline std::array<double, 3> rk4_convergence_ratios(const WaveParams& params, double X0, double Z0, double dt,
                                                    double t_end) {
  const double t_out[] = {t_end};
  auto run = [&](double h) {
    IntegratorConfig cfg;
    cfg.dt = h;
    cfg.t_start = 0.0;
    cfg.t_end = t_end;
    const auto s = integrate_moving_frame(params, X0, Z0, cfg, t_out).samples.back();
    return std::array<double, 2>{s.X, s.Z};
  };
  const auto ref = run(dt / 128.0);
  std::array<double, 4> err{};
  for (int i = 0; i < 4; ++i) {
    const auto y = run(dt / std::ldexp(1.0, i));
    err[i] = std::max(std::abs(y[0] - ref[0]), std::abs(y[1] - ref[1]));
  }
  return {err[0] / err[1], err[1] / err[2], err[2] / err[3]};
}

}  // namespace deepwave
