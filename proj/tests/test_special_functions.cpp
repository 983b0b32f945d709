#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "deepwave/special_functions.hpp"

using namespace deepwave;

namespace {

// Independent oracle: composite Simpson on the Legendre integrand.
double K_quadrature(double m, int n = 20000) {
  const double b = 0.5 * std::numbers::pi;
  const double h = b / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double phi = i * h;
    const double f = 1.0 / std::sqrt(1.0 - m * std::sin(phi) * std::sin(phi));
    s += f * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  return s * h / 3.0;
}

// Incomplete integral F(phi | m), used to invert sn.
double F_quadrature(double phi, double m, int n = 20000) {
  const double h = phi / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    const double f = 1.0 / std::sqrt(1.0 - m * std::sin(t) * std::sin(t));
    s += f * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  return s * h / 3.0;
}

}  // namespace

TEST(Agm, FixedPoint) {
  for (double x : {1e-6, 0.3, 1.0, 42.0}) EXPECT_NEAR(agm(x, x), x, 1e-15 * x);
}

TEST(Agm, KnownValue) { EXPECT_NEAR(agm(1.0, 0.5), 0.728395515523453, 1e-15); }

TEST(Agm, Symmetric) {
  EXPECT_NEAR(agm(1.0, 0.2), agm(0.2, 1.0), 1e-15);
  EXPECT_NEAR(agm(3.0, 7.0), agm(7.0, 3.0), 1e-14);
}

TEST(Agm, RejectsNonPositive) {
  EXPECT_THROW(agm(0.0, 1.0), Error);
  EXPECT_THROW(agm(1.0, -1.0), Error);
}

TEST(CompleteK, AtZero) { EXPECT_NEAR(complete_K(0.0), std::numbers::pi / 2, 1e-15); }

TEST(CompleteK, AtHalf) {
  EXPECT_NEAR(complete_K(0.5), 1.854074677301372, 1e-14);
  EXPECT_NEAR(complete_K(0.5), K_quadrature(0.5), 1e-12);
}

TEST(CompleteK, MatchesQuadrature) {
  for (double m : {0.01, 0.2, 0.7, 0.9, 0.99}) EXPECT_NEAR(complete_K(m), K_quadrature(m), 1e-10) << m;
}

TEST(CompleteK, LogarithmicDivergence) {
  const double m = 1.0 - 1e-12;
  const double K = complete_K(m);
  EXPECT_GT(K, 14.0);
  EXPECT_NEAR(K, 0.5 * std::log(16.0 / (1.0 - m)), 1e-9);
}

TEST(CompleteK, RejectsOutsideDomain) {
  EXPECT_THROW(complete_K(1.0), Error);
  EXPECT_THROW(complete_K(-0.1), Error);
  EXPECT_THROW(complete_K(NAN), Error);
}

TEST(Jacobi, AtOrigin) {
  for (double m : {0.0, 0.3, 0.999}) {
    const auto j = jacobi_sn_cn_dn(0.0, m);
    EXPECT_EQ(j.sn, 0.0);
    EXPECT_EQ(j.cn, 1.0);
    EXPECT_EQ(j.dn, 1.0);
  }
}

TEST(Jacobi, TrigonometricLimit) {
  for (double u : {-7.0, -1.0, 0.3, 2.0, 40.0}) {
    const auto j = jacobi_sn_cn_dn(u, 0.0);
    EXPECT_NEAR(j.sn, std::sin(u), 1e-13);
    EXPECT_NEAR(j.cn, std::cos(u), 1e-13);
    EXPECT_NEAR(j.dn, 1.0, 1e-15);
  }
}

TEST(Jacobi, HyperbolicLimit) {
  const double m = 1.0 - 1e-13;
  for (double u : {-3.0, 0.5, 2.0}) {
    const auto j = jacobi_sn_cn_dn(u, m);
    EXPECT_NEAR(j.sn, std::tanh(u), 1e-12);
    EXPECT_NEAR(j.cn, 1.0 / std::cosh(u), 1e-12);
    EXPECT_NEAR(j.dn, 1.0 / std::cosh(u), 1e-12);
  }
}

TEST(Jacobi, QuarterPeriod) {
  const double K = complete_K(0.5);
  const auto j = jacobi_sn_cn_dn(K, 0.5);
  EXPECT_NEAR(j.sn, 1.0, 1e-14);
  EXPECT_NEAR(j.cn, 0.0, 1e-14);
  EXPECT_NEAR(j.dn, std::sqrt(0.5), 1e-14);
}

TEST(Jacobi, Periodicity) {
  for (double m : {0.1, 0.5, 0.95}) {
    const double K = complete_K(m);
    for (double u : {0.2, 1.1, -0.7}) {
      const auto a = jacobi_sn_cn_dn(u, m);
      const auto b = jacobi_sn_cn_dn(u + 4 * K, m);
      const auto h = jacobi_sn_cn_dn(u + 2 * K, m);
      EXPECT_NEAR(a.sn, b.sn, 1e-12);
      EXPECT_NEAR(a.cn, b.cn, 1e-12);
      EXPECT_NEAR(a.sn, -h.sn, 1e-12);
      EXPECT_NEAR(a.cn, -h.cn, 1e-12);
      EXPECT_NEAR(a.dn, h.dn, 1e-12);
    }
  }
}

TEST(Jacobi, OddEvenSymmetry) {
  const auto a = jacobi_sn_cn_dn(0.83, 0.4);
  const auto b = jacobi_sn_cn_dn(-0.83, 0.4);
  EXPECT_DOUBLE_EQ(a.sn, -b.sn);
  EXPECT_DOUBLE_EQ(a.cn, b.cn);
  EXPECT_DOUBLE_EQ(a.dn, b.dn);
}

TEST(Jacobi, InvertsLegendreIntegral) {
  for (double m : {0.2, 0.6, 0.9}) {
    for (double phi : {0.3, 1.0, 1.4}) {
      const double u = F_quadrature(phi, m);
      const auto j = jacobi_sn_cn_dn(u, m);
      EXPECT_NEAR(j.sn, std::sin(phi), 1e-11);
      EXPECT_NEAR(j.cn, std::cos(phi), 1e-11);
    }
  }
}

TEST(Jacobi, RandomIdentities) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> du(-50.0, 50.0), dm(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double u = du(rng), m = std::min(dm(rng), 1.0 - 1e-15);
    const auto j = jacobi_sn_cn_dn(u, m);
    EXPECT_NEAR(j.sn * j.sn + j.cn * j.cn, 1.0, 1e-12);
    EXPECT_NEAR(j.dn * j.dn + m * j.sn * j.sn, 1.0, 1e-12);
  }
}

TEST(Jacobi, Derivatives) {
  const double h = 1e-5;
  for (double m : {0.05, 0.5, 0.93}) {
    for (double u : {-2.0, 0.4, 3.3}) {
      const auto j = jacobi_sn_cn_dn(u, m);
      const auto p = jacobi_sn_cn_dn(u + h, m);
      const auto q = jacobi_sn_cn_dn(u - h, m);
      EXPECT_NEAR((p.sn - q.sn) / (2 * h), j.cn * j.dn, 1e-6);
      EXPECT_NEAR((p.cn - q.cn) / (2 * h), -j.sn * j.dn, 1e-6);
      EXPECT_NEAR((p.dn - q.dn) / (2 * h), -m * j.sn * j.cn, 1e-6);
    }
  }
}

TEST(Jacobi, LargeArgumentStaysOnCircle) {
  const auto j = jacobi_sn_cn_dn(1e6, 0.7);
  EXPECT_NEAR(j.sn * j.sn + j.cn * j.cn, 1.0, 1e-12);
  EXPECT_TRUE(std::isfinite(j.dn));
}
