// SPDX-License-Identifier: Apache-2.0
#include "kickent/quantum.hpp"

#include <cmath>
#include <string>

#include "kickent/errors.hpp"

namespace kickent {

void validate(const QuantumDims& dims) {
  if (dims.N < 2 || dims.N % 2 != 0) {
    throw DomainError("N must be an even integer >= 2 (got " + std::to_string(dims.N) + ")");
  }
  if (dims.N > dims.max_N) {
    throw DomainError("N = " + std::to_string(dims.N) + " exceeds the configured maximum " +
                      std::to_string(dims.max_N));
  }
}

double QuantumState::norm() const {
  double s = 0.0;
  for (const cplx& c : amps) s += std::norm(c);
  return std::sqrt(s);
}

Eigen::MatrixXcd build_single_map(int N, double K, int max_N) {
  validate(QuantumDims{N, max_N});
  const cplx prefactor = std::polar(1.0 / std::sqrt(static_cast<double>(N)), -kPi / 4.0);
  Eigen::MatrixXcd U(N, N);
  for (int n = 0; n < N; ++n) {
    const double kick = N * K / kTwoPi * std::cos(kTwoPi / N * (n + 0.5));
    for (int np = 0; np < N; ++np) {
      // (n - n')^2 reduced mod 2N keeps the phase argument small for large N.
      const long d = static_cast<long>(n - np);
      const long d2 = (d * d) % (2L * N);
      const double kinetic = kPi * static_cast<double>(d2) / N;
      U(np, n) = prefactor * std::polar(1.0, kick + kinetic);
    }
  }
  return U;
}

std::vector<cplx> build_interaction_phases(int N, double b, int max_N) {
  validate(QuantumDims{N, max_N});
  std::vector<double> c(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) c[static_cast<std::size_t>(n)] = std::cos(kTwoPi / N * (n + 0.5));
  std::vector<cplx> phases(static_cast<std::size_t>(N) * static_cast<std::size_t>(N));
  for (int n1 = 0; n1 < N; ++n1) {
    for (int n2 = 0; n2 < N; ++n2) {
      const double arg = -N * b / kTwoPi * c[static_cast<std::size_t>(n1)] * c[static_cast<std::size_t>(n2)];
      phases[static_cast<std::size_t>(n1) * N + static_cast<std::size_t>(n2)] =
          arg == 0.0 ? cplx{1.0, 0.0} : std::polar(1.0, arg);
    }
  }
  return phases;
}

QuantumPropagator build_propagator(int N, const MapParams& params, int max_N) {
  QuantumPropagator prop;
  prop.dims = QuantumDims{N, max_N};
  prop.U1 = build_single_map(N, params.K1, max_N);
  prop.U2 = build_single_map(N, params.K2, max_N);
  prop.phases_b = build_interaction_phases(N, params.b, max_N);
  return prop;
}

QuantumState qstep(QuantumState psi, const QuantumPropagator& prop) {
  const int N = prop.dims.N;
  if (psi.dims.N != N || psi.amps.size() != prop.dims.total()) {
    throw DimensionError("qstep: state dimension " + std::to_string(psi.dims.N) + " does not match propagator " +
                         std::to_string(N));
  }
  for (std::size_t k = 0; k < psi.amps.size(); ++k) psi.amps[k] *= prop.phases_b[k];

  Eigen::Map<RowMatrixXcd> Psi(psi.amps.data(), N, N);
  const RowMatrixXcd tmp = prop.U1 * Psi;
  Psi.noalias() = tmp * prop.U2.transpose();
  ++psi.time;
  return psi;
}

double unitarity_report(const QuantumPropagator& prop) {
  double dev = 0.0;
  for (const Eigen::MatrixXcd* U : {&prop.U1, &prop.U2}) {
    const Eigen::MatrixXcd G = U->adjoint() * (*U);
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(G.rows(), G.cols());
    dev = std::max(dev, (G - I).cwiseAbs().maxCoeff());
  }
  for (const cplx& p : prop.phases_b) dev = std::max(dev, std::abs(std::abs(p) - 1.0));
  return dev;
}

}  // namespace kickent
