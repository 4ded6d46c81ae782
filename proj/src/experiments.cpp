// SPDX-License-Identifier: Apache-2.0
#include "kickent/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "kickent/errors.hpp"
#include "kickent/initial_states.hpp"
#include "kickent/torus_map.hpp"

namespace kickent {

std::string config_hash(std::string_view canonical) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

EntropyValue classical_entropy(const ClassicalState& state, const SchmidtOptions& options) {
  const std::size_t d = state.cutoff().particle_dim();
  const SchmidtSpectrum spec = schmidt_spectrum(state.coeffs(), d, d, options);
  return EntropyValue{von_neumann_entropy(spec), spec.raw_norm};
}

EntropyValue quantum_entropy(const QuantumState& psi, const SchmidtOptions& options) {
  const auto n = static_cast<std::size_t>(psi.dims.N);
  const SchmidtSpectrum spec = schmidt_spectrum(psi.amps, n, n, options);
  return EntropyValue{von_neumann_entropy(spec), spec.raw_norm};
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string canonical_common(int N, double sigma, const ModeCutoff& cutoff, const SweepOptions& o) {
  std::ostringstream os;
  os << "N=" << N << ";sigma=" << fmt17(sigma) << ";M_m=" << cutoff.M_m << ";M_n=" << cutoff.M_n
     << ";kernel_eps=" << fmt17(o.exec.kernel_eps) << ";classical=" << o.classical << ";quantum=" << o.quantum;
  return os.str();
}

// Entropies after each kick listed in times (sorted, unique, >= 1), keyed by time.
std::map<int, EntropyValue> classical_run(const MapParams& params, std::span<const int> times, double sigma,
                                          const ModeCutoff& cutoff, const SweepOptions& o, bool include_zero) {
  std::map<int, EntropyValue> out;
  ClassicalState state = classical_gaussian_coeffs(cutoff, sigma, o.memory_budget);
  if (include_zero) out[0] = classical_entropy(state, o.schmidt);
  const int T_max = times.empty() ? 0 : times.back();
  evolve(
      std::move(state), params, T_max,
      [&](const ClassicalState& s, const StepReport& r) {
        if (std::binary_search(times.begin(), times.end(), r.time)) out[r.time] = classical_entropy(s, o.schmidt);
      },
      o.exec);
  return out;
}

std::map<int, EntropyValue> quantum_run(const MapParams& params, std::span<const int> times, int N,
                                        const SweepOptions& o, bool include_zero) {
  std::map<int, EntropyValue> out;
  const QuantumPropagator prop = build_propagator(N, params, o.max_N);
  QuantumState psi = product_initial(N, o.max_N);
  if (include_zero) out[0] = quantum_entropy(psi, o.schmidt);
  const int T_max = times.empty() ? 0 : times.back();
  for (int t = 1; t <= T_max; ++t) {
    psi = qstep(std::move(psi), prop);
    if (std::binary_search(times.begin(), times.end(), t)) out[t] = quantum_entropy(psi, o.schmidt);
  }
  return out;
}

std::vector<int> normalized_times(std::span<const int> times) {
  std::vector<int> t(times.begin(), times.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  if (t.empty() || t.front() < 1) throw DomainError("record times must be >= 1");
  return t;
}

void check_pipelines(int N, double sigma, const ModeCutoff& cutoff, const SweepOptions& o) {
  if (o.quantum) validate(QuantumDims{N, o.max_N});
  if (o.classical) {
    validate(GaussianSpec{sigma});
    validate(cutoff);
  }
}

}  // namespace

EntropySeries run_coupling_sweep(std::span<const double> b_values, std::span<const int> record_times, int N,
                                 double sigma, const ModeCutoff& cutoff, const SweepOptions& options) {
  const std::vector<int> times = normalized_times(record_times);
  check_pipelines(N, sigma, cutoff, options);

  EntropySeries series;
  series.label = "coupling-sweep";
  {
    std::ostringstream os;
    os << "coupling;" << canonical_common(N, sigma, cutoff, options) << ";T=";
    for (int t : times) os << t << ',';
    os << ";b=";
    for (double b : b_values) os << fmt17(b) << ',';
    series.run_id = options.run_id.empty() ? config_hash(os.str()) : options.run_id;
  }

  std::vector<EntropyRecord> records;
  for (double b : b_values) {
    const MapParams params{0.0, 0.0, b};
    std::map<int, EntropyValue> cl;
    std::map<int, EntropyValue> qu;
    if (options.classical) cl = classical_run(params, times, sigma, cutoff, options, false);
    if (options.quantum) qu = quantum_run(params, times, N, options, false);
    for (int t : times) {
      EntropyRecord r;
      r.T = t;
      r.b = b;
      r.size = options.quantum ? N : static_cast<long>(cutoff.particle_dim());
      if (options.classical) {
        r.S_classical = cl.at(t).S;
        r.raw_norm = cl.at(t).raw_norm;
      }
      if (options.quantum) r.S_quantum = qu.at(t).S;
      records.push_back(r);
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const EntropyRecord& x, const EntropyRecord& y) {
    return x.T != y.T ? x.T < y.T : x.b < y.b;
  });
  series.records = std::move(records);
  return series;
}

EntropySeries run_coupling_sweep(std::span<const double> b_values, int T, int N, double sigma,
                                 const ModeCutoff& cutoff, const SweepOptions& options) {
  const int times[1] = {T};
  return run_coupling_sweep(b_values, times, N, sigma, cutoff, options);
}

EntropySeries run_time_sweep(const MapParams& params, int T_max, int N, double sigma, const ModeCutoff& cutoff,
                             const SweepOptions& options) {
  if (T_max < 1) throw DomainError("run_time_sweep: T_max must be >= 1");
  check_pipelines(N, sigma, cutoff, options);
  std::vector<int> times(static_cast<std::size_t>(T_max));
  for (int t = 1; t <= T_max; ++t) times[static_cast<std::size_t>(t - 1)] = t;

  EntropySeries series;
  series.label = "time-sweep";
  {
    std::ostringstream os;
    os << "time;" << canonical_common(N, sigma, cutoff, options) << ";T_max=" << T_max << ";K1=" << fmt17(params.K1)
       << ";K2=" << fmt17(params.K2) << ";b=" << fmt17(params.b);
    series.run_id = options.run_id.empty() ? config_hash(os.str()) : options.run_id;
  }

  std::map<int, EntropyValue> cl;
  std::map<int, EntropyValue> qu;
  if (options.classical) cl = classical_run(params, times, sigma, cutoff, options, true);
  if (options.quantum) qu = quantum_run(params, times, N, options, true);
  for (int t = 0; t <= T_max; ++t) {
    EntropyRecord r;
    r.T = t;
    r.b = params.b;
    r.K1 = params.K1;
    r.K2 = params.K2;
    r.size = options.quantum ? N : static_cast<long>(cutoff.particle_dim());
    if (options.classical) {
      r.S_classical = cl.at(t).S;
      r.raw_norm = cl.at(t).raw_norm;
    }
    if (options.quantum) r.S_quantum = qu.at(t).S;
    series.records.push_back(r);
  }
  return series;
}

EntropySeries run_time_sweep(double b, int T_max, int N, double sigma, const ModeCutoff& cutoff,
                             const SweepOptions& options) {
  return run_time_sweep(MapParams{0.0, 0.0, b}, T_max, N, sigma, cutoff, options);
}

ChaoticSweepResult run_chaotic_sweep(double K1, double K2, double b, std::span<const int> N_values, int T_max,
                                     const ChaoticOptions& options) {
  const MapParams params{K1, K2, b};
  ChaoticSweepResult result;
  for (int N : N_values) {
    SweepOptions o = options.sweep;
    o.quantum = true;
    o.classical = options.include_classical;
    EntropySeries s = run_time_sweep(params, T_max, N, options.sigma, options.cutoff, o);
    s.label = "chaotic-sweep";
    result.series.push_back(std::move(s));
  }
  result.lyapunov = lyapunov_exponents(params, options.lyapunov_transient, options.lyapunov_steps, options.seed);
  // Only the two largest can be positive for a symplectic 4D map.
  result.lyapunov_sum = std::max(0.0, result.lyapunov[0]) + std::max(0.0, result.lyapunov[1]);
  return result;
}

LinearRegime quantum_linear_regime(const EntropySeries& series, double r2_min, std::size_t min_points) {
  std::vector<double> t;
  std::vector<double> s;
  for (const EntropyRecord& r : series.records) {
    if (!r.S_quantum) continue;
    t.push_back(r.T);
    s.push_back(*r.S_quantum);
  }
  LinearRegime regime;
  regime.window = detect_linear_window(t, s, r2_min, min_points);
  for (double v : s) regime.max_entropy = std::max(regime.max_entropy, v);
  return regime;
}

std::vector<std::pair<double, double>> entropy_vs_coupling(const EntropySeries& series, int T, bool classical) {
  std::vector<std::pair<double, double>> pts;
  for (const EntropyRecord& r : series.records) {
    if (r.T != T) continue;
    const auto& v = classical ? r.S_classical : r.S_quantum;
    if (v) pts.emplace_back(r.b, *v);
  }
  return pts;
}

}  // namespace kickent
