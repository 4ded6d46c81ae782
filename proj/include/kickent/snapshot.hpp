// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "kickent/classical.hpp"
#include "kickent/quantum.hpp"

namespace kickent {

// Snapshots are a pair of files sharing a stem:
//
//   <stem>.npy   NPY v1.0, dtype '<c16', C order. Classical tensors have
//                shape (2M_m+1, 2M_n+1, 2M_m+1, 2M_n+1) indexed
//                [m1+M_m, n1+M_n, m2+M_m, n2+M_n]; quantum states have
//                shape (N, N) indexed [n1, n2].
//   <stem>.json  sidecar: {"format": "kickent-snapshot", "version": 1,
//                "kind": "classical"|"quantum", "time", "params": {K1,K2,b},
//                "norm", "raw_norm", "config_hash", and "cutoff": {M_m, M_n}
//                with "norm0" (classical) or "N" (quantum)}.

struct NpyArray {
  std::vector<std::size_t> shape;
  std::vector<cplx> data;
};

void write_npy(const std::filesystem::path& path, std::span<const cplx> data, std::span<const std::size_t> shape);
NpyArray read_npy(const std::filesystem::path& path);

struct ClassicalSnapshot {
  ClassicalState state;
  MapParams params;
  std::string config_hash;
};

struct QuantumSnapshot {
  QuantumState state;
  MapParams params;
  std::string config_hash;
};

void save_snapshot(const std::filesystem::path& stem, const ClassicalState& state, const MapParams& params,
                   const std::string& config_hash = {});
void save_snapshot(const std::filesystem::path& stem, const QuantumState& state, const MapParams& params,
                   const std::string& config_hash = {});

ClassicalSnapshot load_classical_snapshot(const std::filesystem::path& stem,
                                          std::size_t memory_budget = kDefaultMemoryBudget);
QuantumSnapshot load_quantum_snapshot(const std::filesystem::path& stem, int max_N = kDefaultMaxN);

}  // namespace kickent
