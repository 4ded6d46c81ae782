// SPDX-License-Identifier: Apache-2.0
#include "kickent/config.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "kickent/bessel.hpp"
#include "kickent/experiments.hpp"
#include "kickent/fitting.hpp"
#include "kickent/quantum.hpp"

namespace kickent {

std::string to_string(Subcommand s) {
  switch (s) {
    case Subcommand::fig1: return "fig1";
    case Subcommand::fig2: return "fig2";
    case Subcommand::fig3: return "fig3";
    case Subcommand::evolve: return "evolve";
    case Subcommand::fit: return "fit";
    case Subcommand::lyapunov: return "lyapunov";
  }
  return "?";
}

namespace {

const std::map<std::string, Subcommand>& subcommands() {
  static const std::map<std::string, Subcommand> m = {
      {"fig1", Subcommand::fig1},     {"fig2", Subcommand::fig2}, {"fig3", Subcommand::fig3},
      {"evolve", Subcommand::evolve}, {"fit", Subcommand::fit},   {"lyapunov", Subcommand::lyapunov}};
  return m;
}

struct KeyInfo {
  const char* name;
  bool flag;  // boolean switch on the command line
  const char* help;
};

// Every configurable field. Names double as config-file keys.
constexpr KeyInfo kKeys[] = {
    {"K1", false, "kick strength of map 1"},
    {"K2", false, "kick strength of map 2"},
    {"b", false, "coupling strength"},
    {"N", false, "quantum dimension per particle (even)"},
    {"sigma", false, "classical Gaussian width, 0 < sigma <= 0.25"},
    {"M-m", false, "classical lattice: max |m|"},
    {"M-n", false, "classical lattice: max |n|"},
    {"T-max", false, "number of kicks"},
    {"b-grid", false, "comma-separated coupling values for fig1"},
    {"seed", false, "RNG seed (Lyapunov initial point)"},
    {"output", false, "output CSV path"},
    {"strict", true, "deterministic single-worker kernels"},
    {"plots", true, "also write an SVG plot next to the CSV"},
    {"N-values", false, "comma-separated N list for fig3"},
    {"workers", false, "worker threads (0 = hardware concurrency)"},
    {"kernel-eps", false, "Bessel kernel truncation threshold"},
    {"classical", true, "fig3: also run the classical pipeline"},
    {"input", false, "fit: CSV produced by fig1"},
    {"resume", false, "evolve: snapshot stem to continue from"},
    {"lyapunov-transient", false, "Lyapunov transient steps"},
    {"lyapunov-steps", false, "Lyapunov averaging steps"},
    {"memory-budget-mb", false, "classical tensor memory budget in MiB"},
};

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& field, const std::string& text, const char* kind) {
  const std::string t = trim(text);
  T value{};
  if constexpr (std::is_floating_point_v<T>) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
      throw ConfigError(field, std::string("expected ") + kind + ", got '" + text + "'");
    }
    value = static_cast<T>(v);
  } else {
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
      throw ConfigError(field, std::string("expected ") + kind + ", got '" + text + "'");
    }
  }
  return value;
}

bool parse_bool(const std::string& field, const std::string& text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(field, "expected boolean, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

void apply_key(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  const std::string key = normalize_key(raw_key);
  if (key == "K1") cfg.params.K1 = parse_number<double>(key, value, "real");
  else if (key == "K2") cfg.params.K2 = parse_number<double>(key, value, "real");
  else if (key == "b") cfg.params.b = parse_number<double>(key, value, "real");
  else if (key == "N") cfg.N = parse_number<int>(key, value, "integer");
  else if (key == "sigma") cfg.sigma = parse_number<double>(key, value, "real");
  else if (key == "M-m") cfg.cutoff.M_m = parse_number<int>(key, value, "integer");
  else if (key == "M-n") cfg.cutoff.M_n = parse_number<int>(key, value, "integer");
  else if (key == "T-max") cfg.T_max = parse_number<int>(key, value, "integer");
  else if (key == "b-grid") {
    cfg.b_grid.clear();
    for (const std::string& s : split_list(value)) cfg.b_grid.push_back(parse_number<double>(key, s, "real list"));
  } else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value, "unsigned integer");
  else if (key == "output") cfg.output_path = trim(value);
  else if (key == "strict") cfg.strict_determinism = parse_bool(key, value);
  else if (key == "plots") cfg.emit_plots = parse_bool(key, value);
  else if (key == "N-values") {
    cfg.N_values.clear();
    for (const std::string& s : split_list(value)) cfg.N_values.push_back(parse_number<int>(key, s, "integer list"));
  } else if (key == "workers") cfg.workers = parse_number<unsigned>(key, value, "unsigned integer");
  else if (key == "kernel-eps") cfg.kernel_eps = parse_number<double>(key, value, "real");
  else if (key == "classical") cfg.classical_chaotic = parse_bool(key, value);
  else if (key == "input") cfg.input_path = trim(value);
  else if (key == "resume") cfg.resume = trim(value);
  else if (key == "lyapunov-transient") cfg.lyapunov_transient = parse_number<int>(key, value, "integer");
  else if (key == "lyapunov-steps") cfg.lyapunov_steps = parse_number<int>(key, value, "integer");
  else if (key == "memory-budget-mb") cfg.memory_budget_mb = parse_number<std::size_t>(key, value, "unsigned integer");
  else throw ConfigError(raw_key, "unknown configuration key");
}

void apply_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config", path.string() + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    apply_key(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ExecutionOptions RunConfig::exec() const {
  ExecutionOptions e;
  e.workers = workers;
  e.strict = strict_determinism;
  e.kernel_eps = kernel_eps;
  return e;
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "subcommand=" << to_string(subcommand) << "\nK1=" << fmt17(params.K1) << "\nK2=" << fmt17(params.K2)
     << "\nb=" << fmt17(params.b) << "\nN=" << N << "\nsigma=" << fmt17(sigma) << "\nM_m=" << cutoff.M_m
     << "\nM_n=" << cutoff.M_n << "\nT_max=" << T_max << "\nb_grid=";
  for (double b : b_grid) os << fmt17(b) << ',';
  os << "\nseed=" << seed << "\nN_values=";
  for (int n : N_values) os << n << ',';
  os << "\nkernel_eps=" << fmt17(kernel_eps) << "\nclassical_chaotic=" << classical_chaotic
     << "\nlyapunov_transient=" << lyapunov_transient << "\nlyapunov_steps=" << lyapunov_steps
     << "\nresume=" << resume << "\ninput=" << input_path << '\n';
  return os.str();
}

std::string RunConfig::hash() const { return config_hash(canonical()); }

RunConfig defaults_for(Subcommand s) {
  RunConfig cfg;
  cfg.subcommand = s;
  cfg.N = 50;
  cfg.sigma = 0.1;
  cfg.cutoff = ModeCutoff{24, 40};
  cfg.b_grid = logspace(0.01, 0.3, 12);
  cfg.N_values = {32, 64};
  cfg.output_path = to_string(s) + ".csv";
  switch (s) {
    case Subcommand::fig1:
      cfg.params = MapParams{0.0, 0.0, 0.0};
      cfg.T_max = 2;
      break;
    case Subcommand::fig2:
    case Subcommand::evolve:
    case Subcommand::fit:
      cfg.params = MapParams{0.0, 0.0, 0.05};
      cfg.T_max = 6;
      break;
    case Subcommand::fig3:
    case Subcommand::lyapunov:
      cfg.params = MapParams{6.0, 5.0, 0.001};
      cfg.T_max = 30;
      break;
  }
  return cfg;
}

RunConfig parse_config(std::span<const std::string> args, std::optional<std::filesystem::path> file) {
  if (args.empty()) throw ConfigError("subcommand", "missing subcommand (fig1|fig2|fig3|evolve|fit|lyapunov)");
  const auto it = subcommands().find(args[0]);
  if (it == subcommands().end()) throw ConfigError("subcommand", "unknown subcommand '" + args[0] + "'");
  RunConfig cfg = defaults_for(it->second);

  CLI::App app{"kickent " + args[0]};
  app.set_help_flag();
  app.allow_extras(false);
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  for (const KeyInfo& k : kKeys) {
    const std::string name = std::string("--") + k.name;
    if (k.flag) {
      options[k.name] = app.add_flag(name, k.help);
    } else {
      options[k.name] = app.add_option(name, values[k.name], k.help);
    }
  }
  std::string config_file;
  CLI::Option* config_opt = app.add_option("--config", config_file, "flat key = value config file");

  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    throw ConfigError("", e.what());
  }

  if (file) {
    apply_file(cfg, *file);
  } else if (config_opt->count() > 0) {
    apply_file(cfg, config_file);
  }
  for (const KeyInfo& k : kKeys) {
    CLI::Option* opt = options[k.name];
    if (opt->count() == 0) continue;
    apply_key(cfg, k.name, k.flag ? "true" : values[k.name]);
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  auto finite = [](const char* f, double v) {
    if (!std::isfinite(v)) throw ConfigError(f, "must be finite");
  };
  finite("K1", cfg.params.K1);
  finite("K2", cfg.params.K2);
  finite("b", cfg.params.b);
  if (cfg.params.b < 0.0) throw ConfigError("b", "must be >= 0");

  auto check_N = [](const char* f, int N) {
    if (N < 2 || N % 2 != 0) throw ConfigError(f, "N must be an even integer >= 2 (got " + std::to_string(N) + ")");
    if (N > kDefaultMaxN) throw ConfigError(f, "N must be <= " + std::to_string(kDefaultMaxN));
  };
  check_N("N", cfg.N);
  if (cfg.subcommand == Subcommand::fig3) {
    if (cfg.N_values.empty()) throw ConfigError("N-values", "must not be empty");
    for (int n : cfg.N_values) check_N("N-values", n);
  }
  if (!(cfg.sigma > 0.0 && cfg.sigma <= 0.25)) throw ConfigError("sigma", "must lie in (0, 0.25]");
  if (cfg.cutoff.M_m < 1) throw ConfigError("M-m", "must be >= 1");
  if (cfg.cutoff.M_n < 1) throw ConfigError("M-n", "must be >= 1");
  if (cfg.cutoff.M_m > kMaxBesselOrder / 2) throw ConfigError("M-m", "must be <= 500");
  const std::size_t budget = cfg.memory_budget_mb << 20;
  if (cfg.cutoff.total_size() * sizeof(cplx) > budget) {
    throw ConfigError("M-m", "lattice exceeds the memory budget of " + std::to_string(cfg.memory_budget_mb) + " MiB");
  }
  if (cfg.T_max < 1) throw ConfigError("T-max", "must be >= 1");
  if (cfg.subcommand == Subcommand::fig1) {
    if (cfg.b_grid.empty()) throw ConfigError("b-grid", "must not be empty");
    for (double b : cfg.b_grid) {
      if (!std::isfinite(b) || b < 0.0) throw ConfigError("b-grid", "values must be finite and >= 0");
    }
  }
  if (!(cfg.kernel_eps >= 0.0 && cfg.kernel_eps <= 1.0e-3)) throw ConfigError("kernel-eps", "must lie in [0, 1e-3]");
  if (cfg.lyapunov_steps < 1000) throw ConfigError("lyapunov-steps", "must be >= 1000");
  if (cfg.lyapunov_transient < 0) throw ConfigError("lyapunov-transient", "must be >= 0");
  if (cfg.subcommand == Subcommand::fit && cfg.input_path.empty()) throw ConfigError("input", "required for fit");
  if (cfg.output_path.empty()) throw ConfigError("output", "must not be empty");
}

std::filesystem::path resolve_output(const RunConfig& cfg) {
  std::filesystem::path p = cfg.output_path;
  if (p.is_relative()) {
    if (const char* dir = std::getenv("KICKENT_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p;
}

std::string usage() {
  std::ostringstream os;
  os << "usage: kickent <fig1|fig2|fig3|evolve|fit|lyapunov> [--key value ...] [--config file]\n\n"
     << "  fig1      entropy against coupling at T = 1..T-max (K1 = K2 = 0)\n"
     << "  fig2      entropy against time at fixed coupling\n"
     << "  fig3      quantum entropy against time in the chaotic regime, with Lyapunov exponents\n"
     << "  evolve    paired classical/quantum evolution with snapshots\n"
     << "  fit       power-law fits of a fig1 CSV\n"
     << "  lyapunov  Lyapunov exponents of the coupled map\n\noptions:\n";
  for (const KeyInfo& k : kKeys) {
    std::string name = std::string("--") + k.name;
    if (!k.flag) name += " <v>";
    os << "  " << name << std::string(name.size() < 26 ? 26 - name.size() : 1, ' ') << k.help << '\n';
  }
  os << "  --config <file>           flat key = value file (flags take precedence)\n"
     << "\nenvironment: KICKENT_OUTPUT_DIR prefixes relative output paths\n";
  return os.str();
}

}  // namespace kickent
