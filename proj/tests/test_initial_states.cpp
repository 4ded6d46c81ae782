// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "kickent/entanglement.hpp"
#include "kickent/errors.hpp"
#include "kickent/initial_states.hpp"

using namespace kickent;

namespace {

// Squared norm of the full (untruncated) product Gaussian, by Poisson summation:
// sum_k exp(-a k^2) = sqrt(pi/a) sum_j exp(-pi^2 j^2 / a).
double full_norm_closed_form(double sigma) {
  const double a = 8.0 * kPi * kPi * sigma * sigma;
  double dual = 1.0;
  for (int j = 1; j < 20; ++j) dual += 2.0 * std::exp(-kPi * kPi * j * j / a);
  const double theta = std::sqrt(kPi / a) * dual;
  const double pref = 8.0 * kPi * sigma * sigma;
  return pref * pref * std::pow(theta, 4);
}

}  // namespace

TEST(Gaussian, CentralCoefficient) {
  EXPECT_NEAR(gaussian_coeff(0, 0, 0.1), std::sqrt(8.0 * kPi * 0.01), 1e-16);
  EXPECT_NEAR(gaussian_coeff(0, 0, 0.1), 0.50132565492620, 1e-13);
}

TEST(Gaussian, Symmetry) {
  for (int m = -5; m <= 5; ++m) {
    for (int n = -5; n <= 5; ++n) {
      EXPECT_EQ(gaussian_coeff(m, n, 0.1), gaussian_coeff(-m, n, 0.1));
      EXPECT_EQ(gaussian_coeff(m, n, 0.1), gaussian_coeff(m, -n, 0.1));
      EXPECT_EQ(gaussian_coeff(m, n, 0.1), gaussian_coeff(n, m, 0.1));
    }
  }
}

TEST(Gaussian, TensorNormMatchesThetaClosedForm) {
  const ClassicalState s = classical_gaussian_coeffs(ModeCutoff{20, 20}, 0.1);
  EXPECT_NEAR(s.raw_norm(), full_norm_closed_form(0.1), 1e-12);
  // The sampled Gaussian is slightly heavier than its integral.
  EXPECT_NEAR(s.raw_norm(), 1.0, 5e-5);
  EXPECT_NEAR(s.norm0, s.norm(), 0.0);
  EXPECT_NEAR(gaussian_mass_fraction(ModeCutoff{20, 20}, 0.1), 1.0, 1e-14);
}

TEST(Gaussian, TensorIsProduct) {
  const ModeCutoff c{6, 9};
  const ClassicalState s = classical_gaussian_coeffs(c, 0.1);
  EXPECT_NEAR(von_neumann_entropy(schmidt_spectrum(s.coeffs(), c.particle_dim(), c.particle_dim())), 0.0, 1e-12);
  EXPECT_EQ(s.at(1, -2, 3, 0), cplx(gaussian_coeff(1, -2, 0.1) * gaussian_coeff(3, 0, 0.1)));
}

TEST(Gaussian, WidthGuard) {
  EXPECT_THROW(classical_gaussian_coeffs(ModeCutoff{2, 2}, 0.0), DomainError);
  EXPECT_THROW(classical_gaussian_coeffs(ModeCutoff{2, 2}, 0.3), DomainError);
  EXPECT_NO_THROW(validate(GaussianSpec{0.25}));
}

TEST(Gaussian, SmallLatticeMassFraction) {
  const double f = gaussian_mass_fraction(ModeCutoff{1, 1}, 0.1);
  EXPECT_LT(f, 1.0 - 1e-3);
  EXPECT_GT(f, 0.0);
}

TEST(Coherent, UnitNorm) {
  for (int N : {2, 8, 50, 128}) {
    const std::vector<cplx> v = coherent_state(N, 0.3, 0.7);
    double s = 0.0;
    for (cplx c : v) s += std::norm(c);
    EXPECT_NEAR(s, 1.0, 1e-14) << N;
  }
}

TEST(Coherent, PeakAtSeamForOrigin) {
  const std::vector<cplx> v = coherent_state(50, 0.0, 0.0);
  std::size_t arg = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
  }
  EXPECT_TRUE(arg == 0 || arg == 49);
  EXPECT_NEAR(std::abs(v[0]), std::abs(v[49]), 1e-15);
}

TEST(Coherent, DistantStatesAreOrthogonal) {
  const std::vector<cplx> a = coherent_state(50, 0.0, 0.0);
  const std::vector<cplx> b = coherent_state(50, 0.5, 0.5);
  cplx ov = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) ov += std::conj(a[i]) * b[i];
  EXPECT_LT(std::abs(ov), 1e-8);
}

TEST(ProductInitial, NormAndEntropy) {
  const QuantumState psi = product_initial(50);
  EXPECT_EQ(psi.dims.N, 50);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-14);
  EXPECT_NEAR(von_neumann_entropy(schmidt_spectrum(psi.amps, 50, 50)), 0.0, 1e-12);
  EXPECT_THROW(product_initial(7), DomainError);
}

TEST(ProductInitial, WidthHelper) { EXPECT_NEAR(sigma_for_N(50), 0.1414213562373095, 1e-15); }
