// SPDX-License-Identifier: Apache-2.0
#include "kickent/initial_states.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "kickent/errors.hpp"

namespace kickent {

void validate(const GaussianSpec& spec) {
  if (!(spec.sigma > 0.0 && spec.sigma <= 0.25)) {
    throw DomainError("sigma must lie in (0, 0.25] (got " + std::to_string(spec.sigma) + ")");
  }
}

double gaussian_coeff(int m, int n, double sigma) {
  const double s2 = sigma * sigma;
  return std::sqrt(8.0 * kPi * s2) * std::exp(-4.0 * kPi * kPi * s2 * (static_cast<double>(m) * m + static_cast<double>(n) * n));
}

namespace {

// sum_{|k| <= limit} exp(-alpha k^2)
double theta_sum(double alpha, int limit) {
  double s = 1.0;
  for (int k = 1; k <= limit; ++k) {
    const double t = std::exp(-alpha * k * k);
    if (t == 0.0) break;
    s += 2.0 * t;
  }
  return s;
}

}  // namespace

double gaussian_mass_fraction(const ModeCutoff& cutoff, double sigma) {
  const double alpha = 8.0 * kPi * kPi * sigma * sigma;
  const double full = theta_sum(alpha, 1 << 20);
  const double per_particle = theta_sum(alpha, cutoff.M_m) * theta_sum(alpha, cutoff.M_n) / (full * full);
  return per_particle * per_particle;
}

ClassicalState classical_gaussian_coeffs(const ModeCutoff& cutoff, double sigma, std::size_t memory_budget) {
  validate(GaussianSpec{sigma});
  ClassicalState state(cutoff, memory_budget);
  const int Mm = cutoff.M_m;
  const int Mn = cutoff.M_n;

  std::vector<double> single;
  single.reserve(cutoff.particle_dim());
  for (int m = -Mm; m <= Mm; ++m)
    for (int n = -Mn; n <= Mn; ++n) single.push_back(gaussian_coeff(m, n, sigma));

  std::span<cplx> a = state.coeffs();
  const std::size_t pdim = single.size();
  for (std::size_t i = 0; i < pdim; ++i)
    for (std::size_t j = 0; j < pdim; ++j) a[i * pdim + j] = single[i] * single[j];

  const double captured = gaussian_mass_fraction(cutoff, sigma);
  if (captured < 1.0 - 1.0e-6) {
    std::clog << "warning: lattice (M_m=" << Mm << ", M_n=" << Mn << ") holds only " << captured
              << " of the initial Gaussian's squared mass at sigma=" << sigma << '\n';
  }
  state.time = 0;
  state.mark_initial();
  return state;
}

std::vector<cplx> coherent_state(int N, double q0, double p0, int max_N) {
  validate(QuantumDims{N, max_N});
  std::vector<cplx> v(static_cast<std::size_t>(N), cplx{0.0, 0.0});
  for (int n = 0; n < N; ++n) {
    const double q = (n + 0.5) / N;
    cplx acc{0.0, 0.0};
    for (int nu = -3; nu <= 3; ++nu) {
      const double d = q - q0 - nu;
      acc += std::polar(std::exp(-kPi * N * d * d), kTwoPi * N * p0 * d);
    }
    v[static_cast<std::size_t>(n)] = acc;
  }
  double s = 0.0;
  for (const cplx& c : v) s += std::norm(c);
  const double inv = 1.0 / std::sqrt(s);
  for (cplx& c : v) c *= inv;
  return v;
}

QuantumState product_initial(int N, int max_N) {
  const std::vector<cplx> c = coherent_state(N, 0.0, 0.0, max_N);
  QuantumState psi;
  psi.dims = QuantumDims{N, max_N};
  psi.amps.resize(psi.dims.total());
  for (int n1 = 0; n1 < N; ++n1)
    for (int n2 = 0; n2 < N; ++n2)
      psi.amps[static_cast<std::size_t>(n1) * N + static_cast<std::size_t>(n2)] =
          c[static_cast<std::size_t>(n1)] * c[static_cast<std::size_t>(n2)];
  return psi;
}

}  // namespace kickent
