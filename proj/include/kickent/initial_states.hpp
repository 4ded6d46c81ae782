// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "kickent/classical.hpp"
#include "kickent/quantum.hpp"

namespace kickent {

struct GaussianSpec {
  double sigma = 0.1;
  double q0 = 0.0;
  double p0 = 0.0;
};

void validate(const GaussianSpec& spec);

// a0(m, n) = (8 pi sigma^2)^{1/2} exp(-4 pi^2 sigma^2 (m^2 + n^2)).
double gaussian_coeff(int m, int n, double sigma);

// Fraction of the full (untruncated) squared norm of the product Gaussian
// tensor that lies on the lattice.
double gaussian_mass_fraction(const ModeCutoff& cutoff, double sigma);

/// Product periodicized-Gaussian density centred at the origin,
/// a0(m1,n1;m2,n2) = a0(m1,n1) a0(m2,n2). norm0 is set to the L2 norm.
/// Prints a warning to std::clog when the lattice holds less than 1 - 1e-6
/// of the squared mass.
ClassicalState classical_gaussian_coeffs(const ModeCutoff& cutoff, double sigma,
                                         std::size_t memory_budget = kDefaultMemoryBudget);

/// Torus coherent state in the position representation,
///   <n|coh> = C sum_{nu=-3..3} exp(-pi N (q_n - q0 - nu)^2 + 2 pi i N p0 (q_n - q0 - nu)),
/// with q_n = (n + 1/2)/N and C fixing unit norm.
std::vector<cplx> coherent_state(int N, double q0, double p0, int max_N = kDefaultMaxN);

// |coh(0,0)> (x) |coh(0,0)>, flattened with index n1 * N + n2.
QuantumState product_initial(int N, int max_N = kDefaultMaxN);

// Width whose Fourier profile matches the coherent-state width at this N.
inline double sigma_for_N(int N) { return 1.0 / std::sqrt(static_cast<double>(N)); }

}  // namespace kickent
