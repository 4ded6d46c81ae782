// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "kickent/bessel.hpp"
#include "kickent/classical.hpp"
#include "kickent/entanglement.hpp"
#include "kickent/errors.hpp"

using namespace kickent;

namespace {

ClassicalState random_state(const ModeCutoff& c, std::mt19937_64& rng) {
  ClassicalState s(c);
  std::normal_distribution<double> g;
  double n2 = 0.0;
  for (cplx& v : s.coeffs()) {
    v = cplx(g(rng), g(rng));
    n2 += std::norm(v);
  }
  for (cplx& v : s.coeffs()) v /= std::sqrt(n2);
  s.mark_initial();
  return s;
}

Eigen::VectorXcd as_vector(const ClassicalState& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.coeffs().size()));
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) v(static_cast<Eigen::Index>(i)) = s.coeffs()[i];
  return v;
}

double max_diff(const ClassicalState& a, const ClassicalState& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) d = std::max(d, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return d;
}

ClassicalState product_state(const ModeCutoff& c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const std::size_t d = c.particle_dim();
  std::vector<cplx> u(d), v(d);
  for (auto& x : u) x = cplx(g(rng), g(rng));
  for (auto& x : v) x = cplx(g(rng), g(rng));
  ClassicalState s(c);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) s.coeffs()[i * d + j] = u[i] * v[j];
  }
  return s;
}

}  // namespace

TEST(ModeCutoff, Counting) {
  EXPECT_EQ((ModeCutoff{2, 2}.total_size()), 625u);
  EXPECT_EQ((ModeCutoff{24, 24}.total_size()), 49u * 49u * 49u * 49u);
  ClassicalState s(ModeCutoff{2, 2});
  EXPECT_EQ(s.coeffs().size(), 625u);
  for (cplx v : s.coeffs()) EXPECT_EQ(v, cplx(0.0));
  EXPECT_EQ(s.time, 0);
}

TEST(ModeCutoff, Guards) {
  EXPECT_THROW(validate(ModeCutoff{0, 3}), DomainError);
  EXPECT_THROW(validate(ModeCutoff{3, -1}), DomainError);
  EXPECT_THROW(ClassicalState(ModeCutoff{24, 40}, std::size_t{1} << 20), BudgetError);
  EXPECT_THROW(new_state(ModeCutoff{200, 200}), BudgetError);
}

TEST(ClassicalState, StorageOrder) {
  const ModeCutoff c{2, 3};
  ClassicalState s(c);
  const std::size_t pd = c.particle_dim();
  EXPECT_EQ(s.offset(-2, -3, -2, -3), 0u);
  EXPECT_EQ(s.offset(-2, -3, -2, -2), 1u);
  EXPECT_EQ(s.offset(-2, -2, -2, -3), pd);
  EXPECT_EQ(s.offset(2, 3, 2, 3), c.total_size() - 1);
  EXPECT_TRUE(s.contains(2, -3));
  EXPECT_FALSE(s.contains(3, 0));
}

TEST(Interaction, ZeroCouplingIsIdentity) {
  std::mt19937_64 rng(1);
  const ClassicalState s = random_state(ModeCutoff{3, 4}, rng);
  const ClassicalState out = apply_interaction(s, 0.0);
  EXPECT_EQ(max_diff(s, out), 0.0);
}

TEST(Interaction, UnitCoefficientSpreadsAlongDiagonal) {
  ClassicalState s(ModeCutoff{4, 3});
  s.at(0, 1, 0, 1) = 1.0;
  const ClassicalState out = apply_interaction(std::move(s), 0.1);
  EXPECT_NEAR(out.at(0, 1, 0, 1).real(), 0.99750156206604001, 1e-15);
  EXPECT_NEAR(out.at(-1, 1, -1, 1).real(), 0.049937526036242, 1e-15);
  EXPECT_NEAR(out.at(1, 1, 1, 1).real(), -0.049937526036242, 1e-15);
  for (int d = -4; d <= 4; ++d) EXPECT_NEAR(std::abs(out.at(-d, 1, -d, 1) - bessel_j(d, 0.1)), 0.0, 1e-15) << d;
  double off = 0.0;
  for (int m1 = -4; m1 <= 4; ++m1) {
    for (int m2 = -4; m2 <= 4; ++m2) {
      if (m1 != m2) off = std::max(off, std::abs(out.at(m1, 1, m2, 1)));
    }
  }
  EXPECT_EQ(off, 0.0);
}

TEST(Interaction, OddTotalShiftsReceiveNothing) {
  ClassicalState s(ModeCutoff{4, 3});
  s.at(0, 2, 0, -1) = 1.0;
  const ClassicalState out = apply_interaction(std::move(s), 0.7);
  double total = 0.0;
  for (int m1 = -4; m1 <= 4; ++m1) {
    for (int m2 = -4; m2 <= 4; ++m2) {
      const cplx v = out.at(m1, 2, m2, -1);
      total += std::norm(v);
      if ((std::abs(m1 + m2) % 2) == 1) {
        EXPECT_EQ(v, cplx(0.0)) << m1 << "," << m2;
      }
    }
  }
  EXPECT_GT(total, 0.9);
}

TEST(Interaction, IsAContraction) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const ClassicalState s = random_state(ModeCutoff{3, 3}, rng);
    const ClassicalState out = apply_interaction(s, 0.3);
    EXPECT_LE(out.norm(), s.norm() + 1e-12);
  }
}

TEST(SingleParticle, FreeShear) {
  const ModeCutoff c{3, 8};
  for (int m = -3; m <= 3; ++m) {
    for (int n = -5; n <= 5; ++n) {
      ClassicalState s(c);
      s.at(m, n, -m, n) = cplx(0.3, -0.4);
      const ClassicalState out = apply_single_particle(std::move(s), 0.0, 0.0);
      EXPECT_EQ(out.at(m, n - m, -m, n + m), cplx(0.3, -0.4));
      EXPECT_NEAR(out.raw_norm(), 0.25, 1e-16);
    }
  }
}

TEST(SingleParticle, ShearOffLatticeDropsCoefficient) {
  const ModeCutoff c{3, 5};
  ClassicalState s(c);
  s.at(3, -5, 0, 0) = cplx(0.6, 0.0);
  s.at(0, 1, 0, 2) = cplx(0.8, 0.0);
  const double before = s.raw_norm();
  const ClassicalState out = apply_single_particle(std::move(s), 0.0, 0.0);
  EXPECT_NEAR(before - out.raw_norm(), 0.36, 1e-15);
  EXPECT_EQ(out.at(0, 1, 0, 2), cplx(0.8, 0.0));
}

TEST(SingleParticle, KickRowIsBesselRow) {
  const ModeCutoff c{10, 3};
  ClassicalState s(c);
  s.at(0, 1, 0, 0) = 1.0;
  const ClassicalState out = apply_single_particle(std::move(s), 6.0, 0.0);
  const BesselRow row = bessel_j_row(-10, 10, 6.0);
  for (int m = -10; m <= 10; ++m) EXPECT_NEAR(std::abs(out.at(m, 1, 0, 0) - row(m)), 0.0, 1e-14) << m;
}

TEST(FpStep, ZeroParametersIsDoubleShear) {
  const ModeCutoff c{2, 6};
  ClassicalState s(c);
  s.at(1, 2, -2, -1) = 1.0;
  const ClassicalState out = fp_step(std::move(s), MapParams{});
  EXPECT_EQ(out.at(1, 1, -2, 1), cplx(1.0));
  EXPECT_EQ(out.time, 1);
}

TEST(FpStep, MatchesDenseOperator) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uK(0.0, 8.0);
  std::uniform_real_distribution<double> ub(0.0, 1.5);
  std::uniform_int_distribution<int> uM(1, 3);
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const ModeCutoff c{uM(rng), uM(rng)};
    const MapParams p{uK(rng), uK(rng), ub(rng)};
    const ClassicalState s = random_state(c, rng);
    const Eigen::VectorXcd expect = dense_fp_matrix(c, p) * as_vector(s);
    const ClassicalState got = fp_step(s, p);
    for (std::size_t i = 0; i < got.coeffs().size(); ++i) {
      worst = std::max(worst, std::abs(got.coeffs()[i] - expect(static_cast<Eigen::Index>(i))));
    }
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(DenseOperator, FreeShearIsZeroOneMatrix) {
  const Eigen::MatrixXcd P = dense_fp_matrix(ModeCutoff{2, 3}, MapParams{});
  for (Eigen::Index c = 0; c < P.cols(); ++c) {
    int ones = 0;
    for (Eigen::Index r = 0; r < P.rows(); ++r) {
      const cplx v = P(r, c);
      EXPECT_TRUE(v == cplx(0.0) || v == cplx(1.0));
      ones += v == cplx(1.0);
    }
    EXPECT_LE(ones, 1);
  }
  for (Eigen::Index r = 0; r < P.rows(); ++r) EXPECT_LE((P.row(r).array().abs() > 0.5).count(), 1);
}

TEST(DenseOperator, OperatorNormAtMostOne) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 4.0);
  for (int trial = 0; trial < 6; ++trial) {
    const Eigen::MatrixXcd P = dense_fp_matrix(ModeCutoff{2, 2}, MapParams{u(rng), u(rng), u(rng) / 4.0});
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(P);
    EXPECT_LE(svd.singularValues()(0), 1.0 + 1e-12);
  }
}

TEST(DenseOperator, SizeGuard) {
  EXPECT_THROW(dense_fp_matrix(ModeCutoff{6, 6}, MapParams{}), DomainError);
}

TEST(Evolve, ZeroStepsLeavesStateUnchanged) {
  std::mt19937_64 rng(3);
  const ClassicalState s = random_state(ModeCutoff{2, 4}, rng);
  const ClassicalState out = evolve(s, MapParams{1.0, 2.0, 0.3}, 0);
  EXPECT_EQ(max_diff(s, out), 0.0);
  EXPECT_EQ(out.time, 0);
}

TEST(Evolve, Semigroup) {
  std::mt19937_64 rng(4);
  const MapParams p{1.5, 0.5, 0.2};
  const ClassicalState s = random_state(ModeCutoff{3, 6}, rng);
  const ClassicalState split = evolve(evolve(s, p, 2), p, 3);
  const ClassicalState once = evolve(s, p, 5);
  EXPECT_EQ(max_diff(split, once), 0.0);
  EXPECT_EQ(once.time, 5);
}

TEST(Evolve, NormNonincreasingAndReported) {
  std::mt19937_64 rng(6);
  const ClassicalState s = random_state(ModeCutoff{3, 5}, rng);
  double prev = s.raw_norm();
  int steps = 0;
  evolve(s, MapParams{3.0, 2.0, 0.5}, 8, [&](const ClassicalState& st, const StepReport& r) {
    ++steps;
    EXPECT_EQ(r.time, st.time);
    EXPECT_NEAR(r.raw_norm, st.raw_norm(), 1e-15);
    EXPECT_LE(std::sqrt(r.raw_norm), std::sqrt(prev) + 1e-12);
    EXPECT_NEAR(r.step_loss, prev - r.raw_norm, 1e-14);
    prev = r.raw_norm;
  });
  EXPECT_EQ(steps, 8);
}

TEST(Evolve, ZeroCouplingPreservesProducts) {
  std::mt19937_64 rng(8);
  const ModeCutoff c{3, 6};
  ClassicalState s = product_state(c, rng);
  s = evolve(std::move(s), MapParams{5.0, 2.5, 0.0}, 4);
  const SchmidtSpectrum spec = schmidt_spectrum(s.coeffs(), c.particle_dim(), c.particle_dim());
  double tail = 0.0;
  for (std::size_t i = 1; i < spec.probs.size(); ++i) tail += spec.probs[i];
  EXPECT_LT(tail, 1e-12);
}

TEST(Evolve, FreeRotorSupportGrowsLinearly) {
  const ModeCutoff c{2, 20};
  ClassicalState s(c);
  s.at(2, 0, -1, 1) = 1.0;
  s.at(1, -1, 0, 0) = 1.0;
  for (int T = 1; T <= 5; ++T) {
    s = fp_step(std::move(s), MapParams{});
    int max_n = 0;
    for (int m1 = -2; m1 <= 2; ++m1) {
      for (int n1 = -20; n1 <= 20; ++n1) {
        for (int m2 = -2; m2 <= 2; ++m2) {
          for (int n2 = -20; n2 <= 20; ++n2) {
            if (s.at(m1, n1, m2, n2) != cplx(0.0)) max_n = std::max({max_n, std::abs(n1), std::abs(n2)});
          }
        }
      }
    }
    EXPECT_EQ(max_n, 2 * T) << T;
    EXPECT_EQ(s.at(2, -2 * T, -1, 1 + T), cplx(1.0));
    EXPECT_EQ(s.at(1, -1 - T, 0, 0), cplx(1.0));
  }
}

TEST(Determinism, WorkerCountDoesNotChangeResults) {
  std::mt19937_64 rng(9);
  const ClassicalState s = random_state(ModeCutoff{4, 7}, rng);
  const MapParams p{2.0, 3.0, 0.4};
  ExecutionOptions strict;
  strict.strict = true;
  const ClassicalState ref = evolve(s, p, 3, {}, strict);
  for (unsigned w : {1u, 2u, 3u, 5u}) {
    ExecutionOptions e;
    e.workers = w;
    EXPECT_EQ(max_diff(evolve(s, p, 3, {}, e), ref), 0.0) << w;
  }
}
