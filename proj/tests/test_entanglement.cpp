// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "kickent/entanglement.hpp"
#include "kickent/errors.hpp"

using namespace kickent;

namespace {

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (cplx& c : v) c = cplx(g(rng), g(rng));
  return v;
}

Eigen::MatrixXcd random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(a).householderQ();
}

// Row-major dimA x dimB matrix <-> flat vector.
using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<cplx> flatten(const RowMat& m) { return {m.data(), m.data() + m.size()}; }

std::vector<double> oracle_probs(const std::vector<cplx>& v, std::size_t a, std::size_t b) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(reduced_density_oracle(v, a, b));
  std::vector<double> p(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(p.rbegin(), p.rend());
  p.resize(std::min(a, b));
  return p;
}

}  // namespace

TEST(Schmidt, ProductVector) {
  std::mt19937_64 rng(1);
  const std::vector<cplx> u = random_vector(4, rng);
  const std::vector<cplx> w = random_vector(6, rng);
  std::vector<cplx> v;
  for (cplx x : u)
    for (cplx y : w) v.push_back(x * y);
  const SchmidtSpectrum s = schmidt_spectrum(v, 4, 6);
  ASSERT_EQ(s.probs.size(), 4u);
  EXPECT_NEAR(s.probs[0], 1.0, 1e-14);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(s.probs[i], 0.0, 1e-14);
  EXPECT_EQ(s.effective_rank(), 1u);
}

TEST(Schmidt, BellPair) {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<cplx> v = {h, 0.0, 0.0, h};
  const SchmidtSpectrum s = schmidt_spectrum(v, 2, 2);
  EXPECT_NEAR(s.probs[0], 0.5, 1e-15);
  EXPECT_NEAR(s.probs[1], 0.5, 1e-15);
  EXPECT_NEAR(von_neumann_entropy(s), std::log(2.0), 1e-15);
  const Eigen::MatrixXcd rho = reduced_density_oracle(v, 2, 2);
  EXPECT_NEAR((rho - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).norm(), 0.0, 1e-15);
}

TEST(Schmidt, OracleProductIsProjector) {
  std::mt19937_64 rng(2);
  const std::vector<cplx> u = random_vector(3, rng);
  std::vector<cplx> v;
  for (cplx x : u)
    for (int j = 0; j < 5; ++j) v.push_back(x * cplx(j + 1.0, -1.0));
  const Eigen::MatrixXcd rho = reduced_density_oracle(v, 3, 5);
  EXPECT_NEAR((rho * rho - rho).norm(), 0.0, 1e-14);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
}

TEST(Schmidt, MatchesReducedDensityOracle) {
  std::mt19937_64 rng(3);
  const std::pair<std::size_t, std::size_t> shapes[] = {{4, 5}, {5, 4}, {1, 7}, {16, 9}, {30, 30}, {64, 3}};
  for (auto [a, b] : shapes) {
    for (int trial = 0; trial < 5; ++trial) {
      const std::vector<cplx> v = random_vector(a * b, rng);
      const SchmidtSpectrum s = schmidt_spectrum(v, a, b);
      const std::vector<double> ref = oracle_probs(v, a, b);
      ASSERT_EQ(s.probs.size(), std::min(a, b));
      for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(s.probs[i], ref[i], 1e-10) << a << "x" << b;
    }
  }
}

TEST(Schmidt, SupportCompressionKeepsSpectrum) {
  std::mt19937_64 rng(4);
  RowMat m = RowMat::Zero(40, 30);
  std::normal_distribution<double> g;
  for (int i = 5; i < 12; ++i)
    for (int j = 3; j < 9; ++j) m(i, j) = cplx(g(rng), g(rng));
  m(30, 20) = 1e-20;
  const std::vector<cplx> v = flatten(m);
  SchmidtOptions full;
  full.support_eps = 0.0;
  const SchmidtSpectrum a = schmidt_spectrum(v, 40, 30);
  const SchmidtSpectrum b = schmidt_spectrum(v, 40, 30, full);
  ASSERT_EQ(a.probs.size(), 30u);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_NEAR(a.probs[i], b.probs[i], 1e-14);
}

TEST(Schmidt, Invariants) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t a = 3 + static_cast<std::size_t>(trial);
    const std::size_t b = 12 - static_cast<std::size_t>(trial);
    const std::vector<cplx> v = random_vector(a * b, rng);
    const SchmidtSpectrum s = schmidt_spectrum(v, a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < s.probs.size(); ++i) {
      EXPECT_GE(s.probs[i], 0.0);
      EXPECT_LE(s.probs[i], 1.0);
      if (i) {
        EXPECT_LE(s.probs[i], s.probs[i - 1]);
      }
      sum += s.probs[i];
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    const double S = von_neumann_entropy(s);
    EXPECT_GE(S, 0.0);
    EXPECT_LE(S, std::log(static_cast<double>(std::min(a, b))) + 1e-12);
  }
}

TEST(Schmidt, SwapSymmetry) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index a = 4 + trial;
    const Eigen::Index b = 9;
    RowMat m(a, b);
    std::normal_distribution<double> g;
    for (Eigen::Index i = 0; i < a; ++i)
      for (Eigen::Index j = 0; j < b; ++j) m(i, j) = cplx(g(rng), g(rng));
    const RowMat mt = m.transpose();
    const double s1 = von_neumann_entropy(schmidt_spectrum(flatten(m), static_cast<std::size_t>(a), 9));
    const double s2 = von_neumann_entropy(schmidt_spectrum(flatten(mt), 9, static_cast<std::size_t>(a)));
    EXPECT_NEAR(s1, s2, 1e-10);
  }
}

TEST(Schmidt, LocalUnitaryInvariance) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    RowMat m(12, 8);
    for (Eigen::Index i = 0; i < 12; ++i)
      for (Eigen::Index j = 0; j < 8; ++j) m(i, j) = cplx(g(rng), g(rng));
    const RowMat rotated = random_unitary(12, rng) * m * random_unitary(8, rng).transpose();
    const SchmidtSpectrum a = schmidt_spectrum(flatten(m), 12, 8);
    const SchmidtSpectrum b = schmidt_spectrum(flatten(rotated), 12, 8);
    for (std::size_t i = 0; i < a.probs.size(); ++i) EXPECT_NEAR(a.probs[i], b.probs[i], 1e-10);
    EXPECT_NEAR(von_neumann_entropy(a), von_neumann_entropy(b), 1e-10);
  }
}

TEST(Schmidt, RenormalizesAndReportsRawNorm) {
  const std::vector<cplx> v = {0.3, 0.0, 0.0, 0.4};
  const SchmidtSpectrum s = schmidt_spectrum(v, 2, 2);
  EXPECT_NEAR(s.raw_norm, 0.25, 1e-16);
  EXPECT_NEAR(s.probs[0], 0.64, 1e-15);
  EXPECT_NEAR(s.probs[1], 0.36, 1e-15);
}

TEST(Schmidt, Errors) {
  const std::vector<cplx> v(6, 0.0);
  EXPECT_THROW(schmidt_spectrum(v, 2, 3), DegenerateStateError);
  EXPECT_THROW(schmidt_spectrum(v, 4, 2), DimensionError);
  const std::vector<cplx> tiny(4, 1e-6);
  EXPECT_THROW(schmidt_spectrum(tiny, 2, 2), DegenerateStateError);
}

TEST(Entropy, Values) {
  SchmidtSpectrum s;
  s.probs = {1.0, 0.0, 0.0};
  EXPECT_EQ(von_neumann_entropy(s), 0.0);
  s.probs = {0.5, 0.5};
  EXPECT_NEAR(von_neumann_entropy(s), 0.69314718055994531, 1e-15);
  s.probs = {0.64, 0.36};
  EXPECT_NEAR(von_neumann_entropy(s), 0.6534181947937018, 1e-15);
}
