#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "deepwave/wave_field.hpp"
#include "scenarios.hpp"

using namespace deepwave;
using deepwave::testing::reference_wave;

namespace {

double round_sig(double v, int digits) {
  const double mag = std::pow(10.0, digits - 1 - std::floor(std::log10(std::abs(v))));
  return std::round(v * mag) / mag;
}

}  // namespace

TEST(Dispersion, ReferenceSpeeds) {
  EXPECT_DOUBLE_EQ(round_sig(dispersion_speed(reference_wave(1)), 5), 3.1305);
  EXPECT_DOUBLE_EQ(round_sig(dispersion_speed(reference_wave(2)), 6), 2.21359);
  EXPECT_DOUBLE_EQ(round_sig(dispersion_speed(reference_wave(4)), 6), 1.56525);
}

TEST(Dispersion, UnitSpeedWhenKEqualsG) {
  EXPECT_NEAR(dispersion_speed(WaveParams::make(9.8, 0.1, 9.8)), 1.0, 1e-15);
}

TEST(Dispersion, LeftGoingFlipsSign) {
  const auto right = WaveParams::make(2.0, 0.1, 9.8, Direction::Right);
  const auto left = WaveParams::make(2.0, 0.1, 9.8, Direction::Left);
  EXPECT_DOUBLE_EQ(dispersion_speed(left), -dispersion_speed(right));
  EXPECT_DOUBLE_EQ(trajectory_constant(left), -trajectory_constant(right));
}

TEST(Dispersion, LongerWavesTravelFaster) {
  double prev = INFINITY;
  for (double k : {0.1, 0.5, 1.0, 2.0, 4.0, 9.8, 30.0}) {
    const double c = dispersion_speed(WaveParams::make(k, 0.1, 9.8));
    EXPECT_LT(c, prev);
    prev = c;
  }
}

TEST(Dispersion, RejectsNonPositiveInputs) {
  WaveParams p;
  p.k = 0.0;
  EXPECT_THROW(dispersion_speed(p), Error);
  p.k = 1.0;
  p.g = -9.8;
  try {
    dispersion_speed(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParameterDomain);
  }
  EXPECT_THROW(WaveParams::make(1.0, 0.0, 9.8), Error);
  EXPECT_THROW(WaveParams::make(NAN, 0.1, 9.8), Error);
}

TEST(TrajectoryConstant, ReferenceValues) {
  EXPECT_DOUBLE_EQ(round_sig(trajectory_constant(reference_wave(1)), 5), 0.31305);
  EXPECT_DOUBLE_EQ(round_sig(trajectory_constant(reference_wave(2)), 5), 0.44272);
  EXPECT_DOUBLE_EQ(round_sig(trajectory_constant(reference_wave(4)), 4), 0.6261);
  EXPECT_NEAR(trajectory_constant(reference_wave(1)), 0.3130495168499705, 1e-15);
}

TEST(TrajectoryConstant, EqualsAck) {
  for (double k : {0.3, 1.0, 7.0}) {
    const auto p = WaveParams::make(k, 0.05, 9.81);
    EXPECT_DOUBLE_EQ(trajectory_constant(p), p.a * dispersion_speed(p) * k);
  }
}

TEST(Field, CrestValues) {
  const auto p = reference_wave(1);
  const double c = dispersion_speed(p);
  const double t = 0.7;
  const auto s = evaluate_field(p, c * t, 0.0, t);
  EXPECT_NEAR(s.u, trajectory_constant(p), 1e-14);
  EXPECT_NEAR(s.v, 0.0, 1e-14);
  EXPECT_NEAR(s.eta, p.a, 1e-15);
  EXPECT_NEAR(s.p, p.p0 + p.a * p.g, 1e-14);
}

TEST(Field, QuarterPhaseValues) {
  const auto p = reference_wave(2);
  const double c = dispersion_speed(p);
  const double t = 1.3;
  const auto s = evaluate_field(p, c * t + std::numbers::pi / (2 * p.k), 0.0, t);
  EXPECT_NEAR(s.u, 0.0, 1e-13);
  EXPECT_NEAR(s.v, trajectory_constant(p), 1e-13);
  EXPECT_NEAR(s.eta, 0.0, 1e-13);
}

TEST(Field, DecaysWithDepth) {
  const auto p = reference_wave(1);
  double prev = INFINITY;
  for (double z : {0.0, -1.0, -5.0, -20.0, -100.0}) {
    const auto s = evaluate_field(p, 0.3, z, 0.2);
    const double speed = std::hypot(s.u, s.v);
    EXPECT_LT(speed, prev);
    prev = speed;
  }
  EXPECT_LT(prev, 1e-40);
}

TEST(Field, SpeedIsAEnvelope) {
  const auto p = reference_wave(4);
  for (double x : {-3.0, 0.0, 0.4, 11.0}) {
    const auto s = evaluate_field(p, x, -0.3, 2.5);
    EXPECT_NEAR(std::hypot(s.u, s.v), std::abs(trajectory_constant(p)) * std::exp(-0.3 * p.k), 1e-14);
  }
}

TEST(Field, PeriodicInSpaceAndTime) {
  const auto p = reference_wave(2);
  const auto a = evaluate_field(p, 0.37, -0.2, 0.11);
  const auto b = evaluate_field(p, 0.37 + p.wavelength(), -0.2, 0.11);
  const auto d = evaluate_field(p, 0.37, -0.2, 0.11 + wave_period(p));
  EXPECT_NEAR(a.u, b.u, 1e-13);
  EXPECT_NEAR(a.v, b.v, 1e-13);
  EXPECT_NEAR(a.u, d.u, 1e-12);
  EXPECT_NEAR(a.v, d.v, 1e-12);
}

TEST(Field, AboveSurfaceFlag) {
  const auto p = reference_wave(1);
  EXPECT_TRUE(evaluate_field(p, 0.0, 0.5, 0.0).above_surface);
  EXPECT_FALSE(evaluate_field(p, 0.0, -0.5, 0.0).above_surface);
}

TEST(Phase, ReductionRange) {
  for (double ph : {-100.0, -std::numbers::pi, 0.0, 3.0, std::numbers::pi, 1e6}) {
    const double r = reduce_phase(ph);
    EXPECT_GE(r, -std::numbers::pi);
    EXPECT_LT(r, std::numbers::pi);
    EXPECT_NEAR(std::sin(r), std::sin(ph), 1e-9);
    EXPECT_NEAR(std::cos(r), std::cos(ph), 1e-9);
  }
}
