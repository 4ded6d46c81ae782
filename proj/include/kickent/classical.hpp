// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kickent/types.hpp"

namespace kickent {

inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{2} << 30;  // 2 GiB

// Truncation of the per-particle Fourier lattice to |m| <= M_m, |n| <= M_n.
struct ModeCutoff {
  int M_m = 24;
  int M_n = 40;

  int m_extent() const { return 2 * M_m + 1; }
  int n_extent() const { return 2 * M_n + 1; }
  // Modes per particle, (2M_m+1)(2M_n+1).
  std::size_t particle_dim() const {
    return static_cast<std::size_t>(m_extent()) * static_cast<std::size_t>(n_extent());
  }
  std::size_t total_size() const { return particle_dim() * particle_dim(); }

  bool operator==(const ModeCutoff&) const = default;
};

void validate(const ModeCutoff& cutoff);

/// Fourier coefficients a(m1,n1;m2,n2) of a two-particle density on T^2 x T^2.
///
/// Storage is row-major over (m1, n1, m2, n2), so the flat vector is the
/// (m1,n1) x (m2,n2) bipartite matrix in row-major order. Indices passed to
/// at() are signed mode labels, not storage offsets.
class ClassicalState {
 public:
  explicit ClassicalState(ModeCutoff cutoff, std::size_t memory_budget = kDefaultMemoryBudget);

  const ModeCutoff& cutoff() const { return cutoff_; }
  std::span<cplx> coeffs() { return coeffs_; }
  std::span<const cplx> coeffs() const { return coeffs_; }

  std::size_t offset(int m1, int n1, int m2, int n2) const;
  bool contains(int m, int n) const {
    return m >= -cutoff_.M_m && m <= cutoff_.M_m && n >= -cutoff_.M_n && n <= cutoff_.M_n;
  }
  cplx& at(int m1, int n1, int m2, int n2) { return coeffs_[offset(m1, n1, m2, n2)]; }
  const cplx& at(int m1, int n1, int m2, int n2) const { return coeffs_[offset(m1, n1, m2, n2)]; }

  // Squared L2 norm of the coefficient vector.
  double raw_norm() const;
  double norm() const;
  bool all_finite() const;

  // Records the current L2 norm as the construction norm.
  void mark_initial();

  int time = 0;
  double norm0 = 0.0;

 private:
  ModeCutoff cutoff_;
  std::vector<cplx> coeffs_;
};

// Zero-filled state at time 0. Throws BudgetError when the tensor exceeds memory_budget bytes.
ClassicalState new_state(ModeCutoff cutoff, std::size_t memory_budget = kDefaultMemoryBudget);

// Coupling kick P_b. Acts on (m1, m2) within each fixed (n1, n2) slice.
ClassicalState apply_interaction(ClassicalState state, double b, const ExecutionOptions& exec = {});

// Single-particle maps P_1 (x) P_2: shear (m,n) -> (m, n-m), then the Bessel kick in m.
ClassicalState apply_single_particle(ClassicalState state, double K1, double K2,
                                     const ExecutionOptions& exec = {});

// One kick of P = (P_1 (x) P_2) P_b, interaction applied first.
ClassicalState fp_step(ClassicalState state, const MapParams& params, const ExecutionOptions& exec = {});

struct StepReport {
  int time = 0;
  double raw_norm = 0.0;   // squared norm after the step
  double step_loss = 0.0;  // squared norm lost to truncation during the step
  double deficit = 0.0;    // squared norm lost since the start of evolve()
};

using StepObserver = std::function<void(const ClassicalState&, const StepReport&)>;

// Applies fp_step T times, invoking observer after each step.
ClassicalState evolve(ClassicalState state, const MapParams& params, int T, const StepObserver& observer = {},
                      const ExecutionOptions& exec = {});

inline constexpr std::size_t kDenseOracleMaxDim = 10000;

/// Explicit matrix of the compressed one-kick operator over the lattice.
///
/// Each entry is assembled from the closed-form matrix elements of the
/// shear-kick and coupling operators; the intermediate index is restricted to
/// the lattice so the result equals the product of the two compressed
/// factors. Rows and columns follow ClassicalState storage order.
Eigen::MatrixXcd dense_fp_matrix(const ModeCutoff& cutoff, const MapParams& params);

}  // namespace kickent
