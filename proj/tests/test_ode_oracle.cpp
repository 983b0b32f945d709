#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "deepwave/cubic.hpp"
#include "deepwave/ode_oracle.hpp"
#include "deepwave/stagnation.hpp"
#include "scenarios.hpp"

using namespace deepwave;
using deepwave::testing::reference_wave;

namespace {

IntegratorConfig adaptive(double t_start, double t_end) {
  IntegratorConfig cfg;
  cfg.method = IntegratorMethod::RK45Adaptive;
  cfg.dt = 1e-3;
  cfg.t_start = t_start;
  cfg.t_end = t_end;
  return cfg;
}

}  // namespace

TEST(Integrators, ExponentialDecay) {
  Rhs<1> f = [](double, const State<1>& y) -> State<1> { return {-y[0]}; };
  const std::vector<double> ts = {0.5, 1.0, 2.0};
  for (auto method : {IntegratorMethod::RK4Fixed, IntegratorMethod::RK45Adaptive}) {
    IntegratorConfig cfg;
    cfg.method = method;
    cfg.dt = 1e-3;
    cfg.t_end = 2.0;
    const auto r = integrate<1>(f, {1.0}, cfg, ts);
    ASSERT_EQ(r.states.size(), 3u);
    for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_NEAR(r.states[i][0], std::exp(-ts[i]), 1e-11);
  }
}

TEST(Integrators, OffGridOutputTimes) {
  Rhs<2> f = [](double, const State<2>& y) -> State<2> { return {y[1], -y[0]}; };
  IntegratorConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 3.0;
  const std::vector<double> ts = {0.0, 0.123, 1.0, 2.9999};
  const auto r = integrate<2>(f, {0.0, 1.0}, cfg, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_NEAR(r.states[i][0], std::sin(ts[i]), 1e-9);
}

TEST(Integrators, RejectsBadConfig) {
  IntegratorConfig cfg;
  cfg.dt = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.dt = 0.1;
  cfg.t_end = cfg.t_start;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Integrators, StepUnderflowIsStiffnessError) {
  Rhs<1> f = [](double, const State<1>& y) -> State<1> { return {y[0] * y[0]}; };
  auto cfg = adaptive(0.0, 2.0);
  const std::vector<double> ts = {2.0};
  try {
    integrate<1>(f, {1.0}, cfg, ts);
    FAIL();
  } catch (const StiffnessFailure& e) {
    EXPECT_EQ(e.code(), ErrorCode::StiffnessError);
    EXPECT_LT(e.time(), 1.0);
    EXPECT_GT(e.state0(), 1e6);
  }
}

TEST(FullSystem, DeadZoneAtDepth) {
  const auto w = reference_wave(1);
  const double z0 = -10.0 * w.wavelength();
  const double T = wave_period(w);
  const std::vector<double> ts = {T};
  const auto s = integrate_full(w, 0.3, z0, IntegratorConfig::standard(w, 0.0, T), ts);
  EXPECT_NEAR(s.samples.back().x, 0.3, 1e-6);
  EXPECT_NEAR(s.samples.back().z, z0, 1e-6);
}

TEST(FullSystem, ForwardDriftOverWavePeriod) {
  for (auto dir : {Direction::Right, Direction::Left}) {
    const auto w = WaveParams::make(1.0, 0.1, 9.8, dir);
    const double T = wave_period(w);
    const std::vector<double> ts = {T};
    const auto s = integrate_full(w, 0.0, -0.5, IntegratorConfig::standard(w, 0.0, T), ts);
    EXPECT_GT(s.samples.back().x * dispersion_speed(w), 0.0);
    EXPECT_NEAR(s.samples.back().z, -0.5, 0.05);
  }
}

TEST(MovingFrame, Equilibrium) {
  // Z0 with |c| <= |A| e^{Z0}: X0 = 0, cos X0 = c / (A e^{Z0}) = 1.
  const auto w = reference_wave(1);
  const double c = dispersion_speed(w), A = trajectory_constant(w);
  const double Z0 = std::log(c / A);
  const std::vector<double> ts = {5.0};
  const auto s = integrate_moving_frame(w, 0.0, Z0, IntegratorConfig::standard(w, 0.0, 5.0), ts);
  EXPECT_NEAR(s.samples.back().X, 0.0, 1e-10);
  EXPECT_NEAR(s.samples.back().Z, Z0, 1e-10);
}

TEST(MovingFrame, MatchesFullSystem) {
  const auto w = reference_wave(1);
  const double c = dispersion_speed(w), k = w.k;
  const double t_end = 3 * wave_period(w);
  const auto ts = uniform_times(0.0, t_end, 301);
  const auto cfg = IntegratorConfig::standard(w, 0.0, t_end);
  const double x0 = 0.2, z0 = -0.1;
  const auto full = integrate_full(w, x0, z0, cfg, ts);
  const auto mov = integrate_moving_frame(w, k * x0, k * z0, cfg, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    EXPECT_NEAR(full.samples[i].X, mov.samples[i].X, 1e-8);
    EXPECT_NEAR(full.samples[i].Z, mov.samples[i].Z, 1e-8);
    EXPECT_NEAR(full.samples[i].x, c * ts[i] + mov.samples[i].X / k, 1e-8);
  }
}

TEST(MovingFrame, StaysInCaseOneBand) {
  const auto w = reference_wave(1);
  const auto red = std::get<Case1Reduction>(classify_roots(build_cubic(w, 1.0), w));
  const double T = period_case1(red);
  const auto ts = uniform_times(0.0, T, 401);
  // Start at the lower turning point with the phase fixed by beta.
  const double X0 = moving_frame_phase(w, 1.0, red.Z1, 0.0);
  const auto s = integrate_moving_frame(w, X0, red.Z1, IntegratorConfig::standard(w, 0.0, T), ts);
  for (const auto& p : s.samples) {
    EXPECT_GE(p.Z, red.Z1 - 1e-3);
    EXPECT_LE(p.Z, red.Z2 + 1e-2);
  }
}

TEST(Truncated, OscillatesWithCaseOnePeriod) {
  const auto w = reference_wave(1);
  const auto P = build_cubic(w, 1.0);
  const auto red = std::get<Case1Reduction>(classify_roots(P, w));
  const double T = period_case1(red);
  const auto ts = uniform_times(0.0, 2 * T, 2001);
  const auto r = integrate_truncated(P, red.Z1, 0.0, IntegratorConfig::standard(w, 0.0, 2 * T), ts);
  ASSERT_FALSE(r.escape_time.has_value());
  double sup = 0.0;
  for (const auto& s : r.series.samples) sup = std::max(sup, std::abs(s.Z - case1_Z(red, s.t, 0.0)));
  EXPECT_LT(sup, 1e-7);
  // Period from the last upward crossing of the band midpoint before T and 2T.
  const double mid = 0.5 * (red.Z1 + red.Z2);
  std::vector<double> crossings;
  const auto& ss = r.series.samples;
  for (std::size_t i = 1; i < ss.size(); ++i)
    if (ss[i - 1].Z < mid && ss[i].Z >= mid)
      crossings.push_back(ss[i - 1].t + (mid - ss[i - 1].Z) / (ss[i].Z - ss[i - 1].Z) * (ss[i].t - ss[i - 1].t));
  ASSERT_GE(crossings.size(), 2u);
  EXPECT_NEAR(crossings[1] - crossings[0], T, 1e-6 * T);
}

TEST(Truncated, EquilibriumAtDoubleRoot) {
  // P = (Z - 1)^2 (Z + 2): Z = 1 has P = P' = 0.
  const CubicCoeffs P{1.0, 0.0, -3.0, 2.0};
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 5.0;
  const std::vector<double> ts = {5.0};
  const auto r = integrate_truncated(P, 1.0, 0.0, cfg, ts);
  EXPECT_DOUBLE_EQ(r.series.samples.back().Z, 1.0);
}

TEST(Truncated, CaseTwoEscapeMatchesAsymptote) {
  const auto w = reference_wave(4);
  const auto P = build_cubic(w, 1.0);
  const auto red = std::get<Case2Reduction>(classify_roots(P, w));
  const double ta = asymptote_times(red, 0.0, 0, 0).front();
  const std::vector<double> ts = {2 * ta};
  auto cfg = adaptive(0.0, 2 * ta);
  const auto r = integrate_truncated(P, red.Z0, 0.0, cfg, ts);
  ASSERT_TRUE(r.escape_time.has_value());
  EXPECT_LT(*r.escape_time, ta);
  EXPECT_GT(r.escape_state->Z, kEscapeThreshold);
  const double est = blowup_time_estimate(P, *r.escape_state);
  EXPECT_NEAR(est, ta, 1e-4 * ta);
  EXPECT_NEAR(est, ta, 1e-8);
}

TEST(Truncated, BlowupQuadratureOnPureCubic) {
  // Z'^2 = Z^3 from Z = 1 reaches infinity after 2 time units.
  const CubicCoeffs P{1.0, 0.0, 0.0, 0.0};
  EXPECT_NEAR(blowup_time_estimate(P, {0.0, 1.0, 1.0}), 2.0, 1e-12);
}

TEST(Residual, ExactAlongMovingFrameOracle) {
  const auto w = reference_wave(1);
  const double X0 = 0.7, Z0 = 0.1;
  const double kA = w.k * trajectory_constant(w);
  const double dZ0 = kA * std::exp(Z0) * std::sin(X0);
  const auto cand = beta_from_initial(w, Z0, dZ0);
  const double H = kA * std::exp(Z0) * std::cos(X0) - w.k * dispersion_speed(w) * Z0;
  const double beta = std::abs(cand.beta_plus + H) < std::abs(cand.beta_minus + H) ? cand.beta_plus : cand.beta_minus;
  const double t_end = 4 * wave_period(w);
  const auto ts = uniform_times(0.0, t_end, 801);
  const auto s = integrate_moving_frame(w, X0, Z0, IntegratorConfig::standard(w, 0.0, t_end), ts);
  const auto rep = residual_full_Z_ode(w, beta, z_series_of(w, s));
  EXPECT_LE(rep.max_residual_eq1, 1e-8);
  EXPECT_EQ(rep.n_samples, ts.size());
}

TEST(Residual, ZeroAtStagnationPoint) {
  const auto w = reference_wave(1);
  const auto rep = solve_stagnation(w, 1.0);
  for (const auto& sol : rep.solutions) {
    ZSeries zs;
    for (double t : {0.0, 1.0, 2.0}) zs.samples.push_back({t, sol.Z_star, 0.0});
    EXPECT_LE(residual_full_Z_ode(w, 1.0, zs).max_residual_eq1, 1e-10);
  }
}

TEST(Residual, TruncationGapOnClosedForm) {
  const auto w = reference_wave(1);
  const auto red = std::get<Case1Reduction>(classify_roots(build_cubic(w, 1.0), w));
  const auto ts = uniform_times(0.0, period_case1(red), 201);
  const auto rep = residual_full_Z_ode(w, 1.0, sample_case1(red, 0.0, ts));
  EXPECT_LT(rep.max_residual_eq2, 1e-10);
  EXPECT_GT(rep.max_residual_eq1, 0.0);
}

TEST(Residual, GapWindowsAreExcluded) {
  const auto w = reference_wave(4);
  const auto red = std::get<Case2Reduction>(classify_roots(build_cubic(w, 1.0), w));
  const auto zs = sample_case2(red, 0.0, uniform_times(0.0, 3.0, 301));
  const auto rep = residual_full_Z_ode(w, 1.0, zs, 0.05);
  ASSERT_EQ(rep.excluded_windows.size(), 1u);
  EXPECT_LT(rep.n_samples, zs.samples.size());
  EXPECT_LT(rep.max_residual_eq2, 1e-6);
}

TEST(Convergence, FourthOrder) {
  const auto w = reference_wave(1);
  const auto ratios = rk4_convergence_ratios(w, 0.7, 0.1, 0.05, 2.0);
  for (double r : ratios) {
    EXPECT_GE(r, 12.0);
    EXPECT_LE(r, 20.0);
  }
}
