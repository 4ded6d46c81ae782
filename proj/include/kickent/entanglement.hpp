// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kickent/types.hpp"

namespace kickent {

struct SchmidtOptions {
  // Squared norms below this are rejected as destroyed by truncation.
  double norm_floor = 1.0e-8;
  // Threshold for effective_rank().
  double rank_eps = 1.0e-12;
  // Rows and columns whose squared norm is at most support_eps * raw_norm are
  // removed before the SVD. Their total weight bounds the shift of every
  // singular value, so the default moves probabilities by < 1e-14.
  // Zero keeps the full matrix.
  double support_eps = 1.0e-32;
};

// Eigenvalues of the reduced density matrix, i.e. normalized squared
// Schmidt coefficients, sorted nonincreasing.
struct SchmidtSpectrum {
  std::vector<double> probs;
  double raw_norm = 0.0;  // squared norm of the input before renormalization
  double rank_eps = 1.0e-12;

  std::size_t effective_rank() const;
};

/// Schmidt spectrum of a bipartite vector viewed as a row-major dimA x dimB matrix.
/// Throws DimensionError on a length mismatch and DegenerateStateError when
/// the squared norm is below options.norm_floor.
SchmidtSpectrum schmidt_spectrum(std::span<const cplx> vector, std::size_t dimA, std::size_t dimB,
                                 const SchmidtOptions& options = {});

// S = -sum p ln p, skipping p < p_floor.
double von_neumann_entropy(const SchmidtSpectrum& spectrum, double p_floor = 1.0e-15);

inline constexpr std::size_t kOracleMaxSize = 1000000;
inline constexpr std::size_t kOracleMaxDimA = 2000;

// rho_1[a, a'] = sum_b v[a, b] conj(v[a', b]) / raw_norm, formed explicitly.
Eigen::MatrixXcd reduced_density_oracle(std::span<const cplx> vector, std::size_t dimA, std::size_t dimB);

}  // namespace kickent
