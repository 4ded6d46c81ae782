// SPDX-License-Identifier: Apache-2.0
#include "kickent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "kickent/errors.hpp"

namespace kickent {

std::size_t SchmidtSpectrum::effective_rank() const {
  return static_cast<std::size_t>(
      std::count_if(probs.begin(), probs.end(), [this](double p) { return p > rank_eps; }));
}

namespace {

void check_shape(std::span<const cplx> v, std::size_t dimA, std::size_t dimB, const char* who) {
  if (dimA == 0 || dimB == 0 || v.size() != dimA * dimB) {
    throw DimensionError(std::string(who) + ": vector length " + std::to_string(v.size()) + " != " +
                         std::to_string(dimA) + " x " + std::to_string(dimB));
  }
}

}  // namespace

SchmidtSpectrum schmidt_spectrum(std::span<const cplx> vector, std::size_t dimA, std::size_t dimB,
                                 const SchmidtOptions& options) {
  check_shape(vector, dimA, dimB, "schmidt_spectrum");

  std::vector<double> row_mass(dimA, 0.0);
  std::vector<double> col_mass(dimB, 0.0);
  for (std::size_t a = 0; a < dimA; ++a) {
    for (std::size_t b = 0; b < dimB; ++b) {
      const double w = std::norm(vector[a * dimB + b]);
      row_mass[a] += w;
      col_mass[b] += w;
    }
  }
  double raw = 0.0;
  for (double w : row_mass) raw += w;
  if (!(raw >= options.norm_floor)) {
    throw DegenerateStateError("schmidt_spectrum: squared norm " + std::to_string(raw) + " is below the floor " +
                               std::to_string(options.norm_floor));
  }

  const double cut = options.support_eps * raw;
  std::vector<Eigen::Index> rows;
  std::vector<Eigen::Index> cols;
  for (std::size_t a = 0; a < dimA; ++a)
    if (row_mass[a] > cut) rows.push_back(static_cast<Eigen::Index>(a));
  for (std::size_t b = 0; b < dimB; ++b)
    if (col_mass[b] > cut) cols.push_back(static_cast<Eigen::Index>(b));

  Eigen::MatrixXcd A(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      A(i, j) = vector[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)]) * dimB +
                       static_cast<std::size_t>(cols[static_cast<std::size_t>(j)])];

  Eigen::VectorXd s;
  if (A.rows() >= A.cols()) {
    s = Eigen::BDCSVD<Eigen::MatrixXcd>(A).singularValues();
  } else {
    const Eigen::MatrixXcd At = A.adjoint();
    s = Eigen::BDCSVD<Eigen::MatrixXcd>(At).singularValues();
  }

  SchmidtSpectrum spec;
  spec.raw_norm = raw;
  spec.rank_eps = options.rank_eps;
  spec.probs.assign(std::min(dimA, dimB), 0.0);
  const double total = s.squaredNorm();
  for (Eigen::Index i = 0; i < s.size(); ++i) spec.probs[static_cast<std::size_t>(i)] = s(i) * s(i) / total;
  std::sort(spec.probs.begin(), spec.probs.end(), std::greater<>());
  return spec;
}

double von_neumann_entropy(const SchmidtSpectrum& spectrum, double p_floor) {
  double S = 0.0;
  for (double p : spectrum.probs) {
    if (p < p_floor || p <= 0.0) continue;
    S -= p * std::log(p);
  }
  return std::max(S, 0.0);
}

Eigen::MatrixXcd reduced_density_oracle(std::span<const cplx> vector, std::size_t dimA, std::size_t dimB) {
  check_shape(vector, dimA, dimB, "reduced_density_oracle");
  if (dimA * dimB > kOracleMaxSize || dimA > kOracleMaxDimA) {
    throw DomainError("reduced_density_oracle: " + std::to_string(dimA) + " x " + std::to_string(dimB) +
                      " exceeds the oracle scale guard");
  }
  double raw = 0.0;
  for (const cplx& c : vector) raw += std::norm(c);
  if (raw == 0.0) throw DegenerateStateError("reduced_density_oracle: zero vector");

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dimA), static_cast<Eigen::Index>(dimA));
  for (std::size_t a = 0; a < dimA; ++a) {
    for (std::size_t ap = 0; ap < dimA; ++ap) {
      cplx acc{0.0, 0.0};
      for (std::size_t b = 0; b < dimB; ++b) acc += vector[a * dimB + b] * std::conj(vector[ap * dimB + b]);
      rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(ap)) = acc / raw;
    }
  }
  return rho;
}

}  // namespace kickent
