// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kickent/classical.hpp"
#include "kickent/entanglement.hpp"
#include "kickent/fitting.hpp"
#include "kickent/quantum.hpp"

namespace kickent {

struct EntropyRecord {
  int T = 0;
  double b = 0.0;
  double K1 = 0.0;
  double K2 = 0.0;
  long size = 0;  // N for records with a quantum run, else modes per particle
  std::optional<double> S_classical;
  std::optional<double> S_quantum;
  std::optional<double> raw_norm;  // classical squared norm
};

struct EntropySeries {
  std::string label;
  std::string run_id;
  std::vector<EntropyRecord> records;
};

// 16 hex digits of FNV-1a over the canonical text of a configuration.
std::string config_hash(std::string_view canonical);

struct SweepOptions {
  ExecutionOptions exec;
  SchmidtOptions schmidt;
  std::size_t memory_budget = kDefaultMemoryBudget;
  int max_N = kDefaultMaxN;
  bool classical = true;
  bool quantum = true;
  // Provenance tag; derived from the sweep inputs when empty.
  std::string run_id;
};

struct EntropyValue {
  double S = 0.0;
  double raw_norm = 0.0;
};

// Split (m1, n1) | (m2, n2).
EntropyValue classical_entropy(const ClassicalState& state, const SchmidtOptions& options = {});
// Split n1 | n2.
EntropyValue quantum_entropy(const QuantumState& psi, const SchmidtOptions& options = {});

/// Entropy against coupling with K1 = K2 = 0. For every b, evolves the
/// product Gaussian (width sigma) and the product coherent state (size N)
/// and records both entropies after each kick in record_times (all in
/// [1, T_max]). Records are ordered by (T, b).
EntropySeries run_coupling_sweep(std::span<const double> b_values, std::span<const int> record_times, int N,
                                 double sigma, const ModeCutoff& cutoff, const SweepOptions& options = {});

// Single-time convenience form: records only at T.
EntropySeries run_coupling_sweep(std::span<const double> b_values, int T, int N, double sigma,
                                 const ModeCutoff& cutoff, const SweepOptions& options = {});

// Entropy against time for T = 0 .. T_max at fixed b and kick strengths.
EntropySeries run_time_sweep(const MapParams& params, int T_max, int N, double sigma, const ModeCutoff& cutoff,
                             const SweepOptions& options = {});

// Fig-2 form with K1 = K2 = 0.
EntropySeries run_time_sweep(double b, int T_max, int N, double sigma, const ModeCutoff& cutoff,
                             const SweepOptions& options = {});

struct ChaoticOptions {
  SweepOptions sweep;
  // Classical runs at strong chaos exceed what the lattice can hold; off unless asked for.
  bool include_classical = false;
  double sigma = 0.1;
  ModeCutoff cutoff{};
  int lyapunov_transient = 1000;
  int lyapunov_steps = 100000;
  std::uint64_t seed = 1;
};

struct ChaoticSweepResult {
  std::vector<EntropySeries> series;  // one per N
  std::array<double, 4> lyapunov{};
  double lyapunov_sum = 0.0;  // sum of the two positive exponents
};

ChaoticSweepResult run_chaotic_sweep(double K1, double K2, double b, std::span<const int> N_values, int T_max,
                                     const ChaoticOptions& options = {});

struct LinearRegime {
  std::optional<LinearWindow> window;  // indices into the series records
  double max_entropy = 0.0;
};

// Linear window of S_quantum against T (r^2 >= 0.995, >= 4 points).
LinearRegime quantum_linear_regime(const EntropySeries& series, double r2_min = 0.995, std::size_t min_points = 4);

// (b, S) pairs at time T for the chosen pipeline.
std::vector<std::pair<double, double>> entropy_vs_coupling(const EntropySeries& series, int T, bool classical);

}  // namespace kickent
