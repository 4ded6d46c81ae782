// SPDX-License-Identifier: Apache-2.0
// kickent: command-line front end for the coupled kicked-map simulations.
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "kickent/config.hpp"
#include "kickent/csv.hpp"
#include "kickent/errors.hpp"
#include "kickent/experiments.hpp"
#include "kickent/initial_states.hpp"
#include "kickent/plot.hpp"
#include "kickent/snapshot.hpp"
#include "kickent/torus_map.hpp"

namespace {

using namespace kickent;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions o;
  o.exec = cfg.exec();
  o.memory_budget = cfg.memory_budget_mb << 20;
  o.run_id = cfg.hash();
  return o;
}

std::filesystem::path sibling(const std::filesystem::path& p, const std::string& ext) {
  std::filesystem::path q = p;
  q.replace_extension(ext);
  return q;
}

void write_outputs(const RunConfig& cfg, std::span<const EntropySeries> series, PlotSpec::Axes axes,
                   const std::string& title) {
  EntropySeries merged;
  merged.run_id = cfg.hash();
  for (const EntropySeries& s : series) merged.records.insert(merged.records.end(), s.records.begin(), s.records.end());
  const std::filesystem::path out = resolve_output(cfg);
  emit_csv(merged, out);
  std::cout << "wrote " << out.string() << '\n';
  if (cfg.emit_plots) {
    const std::filesystem::path svg = sibling(out, ".svg");
    emit_plot(series, svg, PlotSpec{axes, title, cfg.hash()});
    std::cout << "wrote " << svg.string() << '\n';
  }
}

void print_fits(const EntropySeries& series) {
  std::map<int, bool> times;
  for (const EntropyRecord& r : series.records) times[r.T] = true;
  for (const auto& [T, unused] : times) {
    for (int pipe = 0; pipe < 2; ++pipe) {
      const auto pts = entropy_vs_coupling(series, T, pipe == 0);
      std::vector<std::pair<double, double>> positive;
      for (const auto& p : pts) {
        if (p.first > 0.0 && p.second > 0.0) positive.push_back(p);
      }
      if (positive.size() < 3) continue;
      const PowerLawFit fit = fit_power_law(positive);
      std::printf("T=%d %-9s exponent %.4f  r^2 %.5f\n", T, pipe == 0 ? "classical" : "quantum", fit.exponent,
                  fit.r_squared);
    }
  }
}

int run_fig1(const RunConfig& cfg) {
  std::vector<int> times;
  for (int t = 1; t <= cfg.T_max; ++t) times.push_back(t);
  const EntropySeries s = run_coupling_sweep(cfg.b_grid, times, cfg.N, cfg.sigma, cfg.cutoff, sweep_options(cfg));
  print_fits(s);
  write_outputs(cfg, std::span(&s, 1), PlotSpec::Axes::coupling_loglog, "Entanglement against coupling");
  return 0;
}

int run_fig2(const RunConfig& cfg) {
  const EntropySeries s = run_time_sweep(cfg.params, cfg.T_max, cfg.N, cfg.sigma, cfg.cutoff, sweep_options(cfg));
  for (const EntropyRecord& r : s.records) {
    std::printf("T=%d  S_classical %.6g  S_quantum %.6g  raw_norm %.8f\n", r.T, r.S_classical.value_or(0.0),
                r.S_quantum.value_or(0.0), r.raw_norm.value_or(0.0));
  }
  write_outputs(cfg, std::span(&s, 1), PlotSpec::Axes::time_linear, "Entanglement against time");
  return 0;
}

int run_fig3(const RunConfig& cfg) {
  ChaoticOptions o;
  o.sweep = sweep_options(cfg);
  o.include_classical = cfg.classical_chaotic;
  o.sigma = cfg.sigma;
  o.cutoff = cfg.cutoff;
  o.lyapunov_transient = cfg.lyapunov_transient;
  o.lyapunov_steps = cfg.lyapunov_steps;
  o.seed = cfg.seed;
  const ChaoticSweepResult res =
      run_chaotic_sweep(cfg.params.K1, cfg.params.K2, cfg.params.b, cfg.N_values, cfg.T_max, o);
  std::printf("Lyapunov exponents %.6f %.6f %.6f %.6f  positive sum %.6f\n", res.lyapunov[0], res.lyapunov[1],
              res.lyapunov[2], res.lyapunov[3], res.lyapunov_sum);
  for (const EntropySeries& s : res.series) {
    const LinearRegime lr = quantum_linear_regime(s);
    const long N = s.records.empty() ? 0 : s.records.front().size;
    if (lr.window) {
      std::printf("N=%ld linear window T=%d..%d slope %.6g (r^2 %.5f)  max S %.6f\n", N,
                  s.records[lr.window->first].T, s.records[lr.window->last].T, lr.window->fit.slope,
                  lr.window->fit.r_squared, lr.max_entropy);
    } else {
      std::printf("N=%ld no linear window  max S %.6f\n", N, lr.max_entropy);
    }
  }
  write_outputs(cfg, res.series, PlotSpec::Axes::time_linear, "Entanglement in the chaotic regime");
  return 0;
}

int run_evolve(const RunConfig& cfg) {
  const std::filesystem::path out = resolve_output(cfg);
  const SchmidtOptions schmidt;
  const ExecutionOptions exec = cfg.exec();
  const std::size_t budget = cfg.memory_budget_mb << 20;

  MapParams params = cfg.params;
  ClassicalState cl = [&] {
    if (cfg.resume.empty()) return classical_gaussian_coeffs(cfg.cutoff, cfg.sigma, budget);
    ClassicalSnapshot snap = load_classical_snapshot(cfg.resume + ".classical", budget);
    params = snap.params;
    return std::move(snap.state);
  }();
  QuantumState psi = cfg.resume.empty() ? product_initial(cfg.N) : load_quantum_snapshot(cfg.resume + ".quantum").state;
  if (cl.time != psi.time) throw IoError("resume: classical and quantum snapshots are at different times");
  const QuantumPropagator prop = build_propagator(psi.dims.N, params);

  EntropySeries series;
  series.run_id = cfg.hash();
  auto record = [&](const ClassicalState& c, const QuantumState& q) {
    const EntropyValue ec = classical_entropy(c, schmidt);
    EntropyRecord r;
    r.T = c.time;
    r.b = params.b;
    r.K1 = params.K1;
    r.K2 = params.K2;
    r.size = q.dims.N;
    r.S_classical = ec.S;
    r.raw_norm = ec.raw_norm;
    r.S_quantum = quantum_entropy(q, schmidt).S;
    series.records.push_back(r);
    std::printf("T=%d  S_classical %.6g  S_quantum %.6g  raw_norm %.8f\n", r.T, *r.S_classical, *r.S_quantum,
                *r.raw_norm);
  };
  if (cfg.resume.empty()) record(cl, psi);
  while (cl.time < cfg.T_max) {
    cl = fp_step(std::move(cl), params, exec);
    psi = qstep(std::move(psi), prop);
    record(cl, psi);
  }
  emit_csv(series, out);
  std::cout << "wrote " << out.string() << '\n';
  const std::filesystem::path stem = sibling(out, "");
  save_snapshot(stem.string() + ".classical", cl, params, cfg.hash());
  save_snapshot(stem.string() + ".quantum", psi, params, cfg.hash());
  std::cout << "snapshots " << stem.string() << ".{classical,quantum}.{npy,json}\n";
  if (cfg.emit_plots) {
    emit_plot(series, sibling(out, ".svg"), PlotSpec{PlotSpec::Axes::time_linear, "Paired evolution", cfg.hash()});
  }
  return 0;
}

int run_fit(const RunConfig& cfg) {
  const EntropySeries s = read_csv(std::filesystem::path(cfg.input_path));
  const std::filesystem::path out = resolve_output(cfg);
  std::ofstream f(out, std::ios::binary);
  if (!f) throw IoError("cannot open " + out.string() + " for writing");
  f << "# config_hash=" << cfg.hash() << " source_run_id=" << s.run_id << '\n';
  f << "pipeline,T,exponent,log_prefactor,r_squared,points\n";
  std::map<int, bool> times;
  for (const EntropyRecord& r : s.records) times[r.T] = true;
  for (const auto& [T, unused] : times) {
    for (int pipe = 0; pipe < 2; ++pipe) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& p : entropy_vs_coupling(s, T, pipe == 0)) {
        if (p.first > 0.0 && p.second > 0.0) pts.push_back(p);
      }
      if (pts.size() < 3) continue;
      const PowerLawFit fit = fit_power_law(pts);
      char line[160];
      std::snprintf(line, sizeof line, "%s,%d,%.17g,%.17g,%.17g,%zu\n", pipe == 0 ? "classical" : "quantum", T,
                    fit.exponent, fit.log_prefactor, fit.r_squared, pts.size());
      f << line;
      std::cout << line;
    }
  }
  if (!f) throw IoError("write failed: " + out.string());
  std::cout << "wrote " << out.string() << '\n';
  return 0;
}

int run_lyapunov(const RunConfig& cfg) {
  const auto l = lyapunov_exponents(cfg.params, cfg.lyapunov_transient, cfg.lyapunov_steps, cfg.seed);
  const double sum = std::max(0.0, l[0]) + std::max(0.0, l[1]);
  const std::filesystem::path out = resolve_output(cfg);
  std::ofstream f(out, std::ios::binary);
  if (!f) throw IoError("cannot open " + out.string() + " for writing");
  f << "# config_hash=" << cfg.hash() << '\n' << "index,exponent\n";
  char line[64];
  for (int i = 0; i < 4; ++i) {
    std::snprintf(line, sizeof line, "%d,%.17g\n", i + 1, l[static_cast<std::size_t>(i)]);
    f << line;
  }
  std::printf("exponents %.6f %.6f %.6f %.6f\npositive sum %.6f\n", l[0], l[1], l[2], l[3], sum);
  if (!f) throw IoError("write failed: " + out.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    std::cout << kickent::usage();
    return args.empty() ? kExitConfig : 0;
  }
  for (const std::string& a : args) {
    if (a == "--help" || a == "-h") {
      std::cout << kickent::usage();
      return 0;
    }
  }
  kickent::RunConfig cfg;
  try {
    cfg = kickent::parse_config(args);
  } catch (const kickent::ConfigError& e) {
    std::cerr << "kickent: config error: " << e.what() << '\n';
    return kExitConfig;
  }
  try {
    switch (cfg.subcommand) {
      case kickent::Subcommand::fig1: return run_fig1(cfg);
      case kickent::Subcommand::fig2: return run_fig2(cfg);
      case kickent::Subcommand::fig3: return run_fig3(cfg);
      case kickent::Subcommand::evolve: return run_evolve(cfg);
      case kickent::Subcommand::fit: return run_fit(cfg);
      case kickent::Subcommand::lyapunov: return run_lyapunov(cfg);
    }
  } catch (const std::exception& e) {
    std::cerr << "kickent: error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
