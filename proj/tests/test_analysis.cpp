// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kickent/errors.hpp"
#include "kickent/fitting.hpp"
#include "kickent/torus_map.hpp"

using namespace kickent;

TEST(TorusMap, OriginIsFixed) {
  const TorusPoint o{};
  EXPECT_EQ(map_step(o, MapParams{6.0, 5.0, 0.3}), o);
}

TEST(TorusMap, FreeShear) {
  const TorusPoint p = map_step(TorusPoint{0.25, 0.5, 0.1, 0.3}, MapParams{});
  EXPECT_NEAR(p.q1, 0.75, 1e-15);
  EXPECT_NEAR(p.p1, 0.5, 1e-15);
  EXPECT_NEAR(p.q2, 0.4, 1e-15);
  EXPECT_NEAR(p.p2, 0.3, 1e-15);
}

TEST(TorusMap, StaysOnUnitTorus) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const TorusPoint p = map_step(TorusPoint{u(rng), u(rng), u(rng), u(rng)}, MapParams{6.0, 5.0, 2.0});
    for (double c : {p.q1, p.p1, p.q2, p.p2}) {
      EXPECT_GE(c, 0.0);
      EXPECT_LT(c, 1.0);
    }
  }
  EXPECT_EQ(wrap_unit(-1e-18), 0.0);
  EXPECT_EQ(wrap_unit(1.0), 0.0);
}

TEST(Jacobian, FreeShearBlocks) {
  const Eigen::Matrix4d J = map_jacobian(TorusPoint{0.3, 0.2, 0.7, 0.9}, MapParams{});
  Eigen::Matrix4d expect;
  expect << 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1;
  EXPECT_EQ(J, expect);
}

TEST(Jacobian, UnitDeterminant) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const MapParams p{10.0 * u(rng), 10.0 * u(rng), 2.0 * u(rng)};
    const Eigen::Matrix4d J = map_jacobian(TorusPoint{u(rng), u(rng), u(rng), u(rng)}, p);
    EXPECT_NEAR(J.determinant(), 1.0, 1e-12);
  }
}

TEST(Jacobian, MatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.2, 0.6);
  const double h = 1e-6;
  for (int trial = 0; trial < 50; ++trial) {
    const MapParams p{6.0 * u(rng), 5.0 * u(rng), u(rng)};
    const double x[4] = {u(rng), u(rng) * 0.5, u(rng), u(rng) * 0.5};
    const Eigen::Matrix4d J = map_jacobian(TorusPoint{x[0], x[1], x[2], x[3]}, p);
    for (int c = 0; c < 4; ++c) {
      double xp[4] = {x[0], x[1], x[2], x[3]};
      double xm[4] = {x[0], x[1], x[2], x[3]};
      xp[c] += h;
      xm[c] -= h;
      const TorusPoint a = map_step(TorusPoint{xp[0], xp[1], xp[2], xp[3]}, p);
      const TorusPoint b = map_step(TorusPoint{xm[0], xm[1], xm[2], xm[3]}, p);
      const double da[4] = {a.q1, a.p1, a.q2, a.p2};
      const double db[4] = {b.q1, b.p1, b.q2, b.p2};
      for (int r = 0; r < 4; ++r) {
        double d = da[r] - db[r];
        d -= std::round(d);  // undo wrapping
        EXPECT_NEAR(d / (2 * h), J(r, c), 1e-5) << r << "," << c;
      }
    }
  }
}

TEST(Jacobian, TangentStepComposes) {
  const MapParams p{3.0, 2.0, 0.4};
  const TorusPoint x{0.1, 0.2, 0.3, 0.4};
  const auto [y, M] = tangent_step(x, Eigen::Matrix4d::Identity(), p);
  EXPECT_EQ(y, map_step(x, p));
  EXPECT_EQ(M, map_jacobian(x, p));
  const auto [z, M2] = tangent_step(y, M, p);
  EXPECT_NEAR((M2 - map_jacobian(y, p) * M).norm(), 0.0, 1e-12);
}

TEST(Lyapunov, IntegrableShearIsZero) {
  const auto l = lyapunov_exponents(MapParams{}, 100, 200000, 1);
  for (double v : l) EXPECT_NEAR(v, 0.0, 2e-3);
}

TEST(Lyapunov, SingleStandardMap) {
  const auto l = lyapunov_exponents(MapParams{6.0, 0.0, 0.0}, 1000, 100000, 1);
  EXPECT_NEAR(l[0], std::log(3.0), 0.1 * std::log(3.0));
  EXPECT_NEAR(l[0] + l[3], 0.0, 1e-3);
}

TEST(Lyapunov, CoupledChaoticSum) {
  const auto l = lyapunov_exponents(MapParams{6.0, 5.0, 0.001}, 1000, 100000, 1);
  const double sum = l[0] + l[1];
  EXPECT_NEAR(sum, std::log(3.0) + std::log(2.5), 0.15 * 2.01);
  EXPECT_NEAR(l[0] + l[1] + l[2] + l[3], 0.0, 1e-9);
  EXPECT_GE(l[0], l[1]);
  EXPECT_GE(l[1], l[2]);
  EXPECT_GE(l[2], l[3]);
}

TEST(Lyapunov, SeedDeterminism) {
  const auto a = lyapunov_exponents(MapParams{6.0, 5.0, 0.001}, 10, 5000, 42);
  const auto b = lyapunov_exponents(MapParams{6.0, 5.0, 0.001}, 10, 5000, 42);
  EXPECT_EQ(a, b);
}

TEST(PowerLaw, ExactLines) {
  std::vector<std::pair<double, double>> pts;
  for (double b : logspace(0.01, 0.3, 12)) pts.emplace_back(b, std::pow(b, 1.8));
  PowerLawFit f = fit_power_law(pts);
  EXPECT_NEAR(f.exponent, 1.8, 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  pts.clear();
  for (double b : {0.1, 0.2, 0.5, 1.0}) pts.emplace_back(b, 2.0 * b * b);
  f = fit_power_law(pts);
  EXPECT_NEAR(f.exponent, 2.0, 1e-12);
  EXPECT_NEAR(f.log_prefactor, std::log(2.0), 1e-12);
  for (double r : power_law_residuals(pts, f)) EXPECT_NEAR(r, 0.0, 1e-12);
}

TEST(PowerLaw, NoisyData) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> eps(-0.01, 0.01);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<double, double>> pts;
    for (double b : logspace(0.01, 0.3, 12)) pts.emplace_back(b, std::pow(b, 1.8) * (1.0 + eps(rng)));
    EXPECT_NEAR(fit_power_law(pts).exponent, 1.8, 0.05);
  }
}

TEST(PowerLaw, Errors) {
  const std::vector<std::pair<double, double>> two = {{0.1, 0.1}, {0.2, 0.3}};
  EXPECT_THROW(fit_power_law(two), DomainError);
  const std::vector<std::pair<double, double>> zero = {{0.1, 0.1}, {0.2, 0.0}, {0.3, 0.5}};
  EXPECT_THROW(fit_power_law(zero), DomainError);
}

TEST(Correlation, Basics) {
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {2, 4, 6, 8.5};
  const std::vector<double> z = {4, 3, 2, 1};
  EXPECT_GT(pearson_correlation(x, y), 0.99);
  EXPECT_NEAR(pearson_correlation(x, z), -1.0, 1e-15);
}

TEST(LinearWindow, FindsLinearSegmentBeforeSaturation) {
  std::vector<double> t, s;
  for (int i = 0; i <= 20; ++i) {
    t.push_back(i);
    s.push_back(i <= 8 ? 0.5 * i : 4.0 + 2.0 * (1.0 - std::exp(-0.5 * (i - 8))));
  }
  const auto w = detect_linear_window(t, s);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->first, 0u);
  EXPECT_GE(w->last, 8u);
  EXPECT_LE(w->last, 13u);
  EXPECT_NEAR(w->fit.slope, 0.5, 0.05);
  EXPECT_GE(w->fit.r_squared, 0.995);
  const auto flat = detect_linear_window(std::vector<double>{0, 1, 2}, std::vector<double>{0, 1, 2});
  EXPECT_FALSE(flat.has_value());
}

TEST(Logspace, Endpoints) {
  const std::vector<double> v = logspace(0.01, 0.3, 12);
  ASSERT_EQ(v.size(), 12u);
  EXPECT_NEAR(v.front(), 0.01, 1e-17);
  EXPECT_NEAR(v.back(), 0.3, 1e-15);
  for (std::size_t i = 2; i < v.size(); ++i) EXPECT_NEAR(v[i] / v[i - 1], v[1] / v[0], 1e-12);
}
