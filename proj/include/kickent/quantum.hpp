// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kickent/types.hpp"

namespace kickent {

inline constexpr int kDefaultMaxN = 256;

// Hilbert space size N = 1/h per particle. Position grid q_n = (n + 1/2)/N.
struct QuantumDims {
  int N = 50;
  int max_N = kDefaultMaxN;

  std::size_t total() const { return static_cast<std::size_t>(N) * static_cast<std::size_t>(N); }
};

void validate(const QuantumDims& dims);

// Amplitudes on the bipartite position basis, index n1 * N + n2.
struct QuantumState {
  std::vector<cplx> amps;
  QuantumDims dims;
  int time = 0;

  double norm() const;
};

using RowMatrixXcd = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// U = (U1 (x) U2) U_b with U_b diagonal in the position basis.
struct QuantumPropagator {
  QuantumDims dims;
  Eigen::MatrixXcd U1;
  Eigen::MatrixXcd U2;
  std::vector<cplx> phases_b;  // index n1 * N + n2
};

/// Quantum standard map on the two-torus in the position representation:
///   <n'|U|n> = e^{-i pi/4}/sqrt(N) exp(i N K/(2pi) cos(2pi (n+1/2)/N)) exp(i pi (n-n')^2 / N).
Eigen::MatrixXcd build_single_map(int N, double K, int max_N = kDefaultMaxN);

// exp(-i N b/(2pi) cos(2pi(n1+1/2)/N) cos(2pi(n2+1/2)/N)) for every (n1, n2).
std::vector<cplx> build_interaction_phases(int N, double b, int max_N = kDefaultMaxN);

QuantumPropagator build_propagator(int N, const MapParams& params, int max_N = kDefaultMaxN);

// One kick: diagonal U_b, then U1 Psi U2^T on the N x N amplitude array.
QuantumState qstep(QuantumState psi, const QuantumPropagator& prop);

// Largest deviation of U1^dag U1, U2^dag U2 from identity and of |phases_b| from 1.
double unitarity_report(const QuantumPropagator& prop);

}  // namespace kickent
