// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "kickent/classical.hpp"
#include "kickent/types.hpp"

namespace kickent {

enum class Subcommand { fig1, fig2, fig3, evolve, fit, lyapunov };

std::string to_string(Subcommand s);

// Parse or validation failure; field() names the offending option.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::fig1;
  MapParams params;
  int N = 50;
  double sigma = 0.1;
  ModeCutoff cutoff;
  int T_max = 2;
  std::vector<double> b_grid;
  std::uint64_t seed = 1;
  std::string output_path;
  bool strict_determinism = false;
  bool emit_plots = false;

  std::vector<int> N_values;
  unsigned workers = 0;
  double kernel_eps = 1.0e-14;
  bool classical_chaotic = false;
  std::string input_path;
  std::string resume;
  int lyapunov_transient = 1000;
  int lyapunov_steps = 100000;
  std::size_t memory_budget_mb = kDefaultMemoryBudget >> 20;

  ExecutionOptions exec() const;
  // Stable text form of every field; hash() is its FNV-1a digest.
  std::string canonical() const;
  std::string hash() const;
};

// Built-in defaults, which carry the published figure parameters.
RunConfig defaults_for(Subcommand s);

/// args[0] is the subcommand; the rest are flags. Precedence is
/// flags > config file > built-in defaults. The config file is `file` when
/// given, else the value of --config.
///
/// Config file grammar, one entry per line:
///   entry   := key '=' value
///   key     := flag name without the leading dashes ('-' and '_' interchangeable)
///   value   := scalar | scalar (',' scalar)*
/// Blank lines and text after '#' are ignored.
RunConfig parse_config(std::span<const std::string> args, std::optional<std::filesystem::path> file = std::nullopt);

// Range and consistency checks; throws ConfigError naming the field.
void validate(const RunConfig& cfg);

// output_path, prefixed by $KICKENT_OUTPUT_DIR when relative and the variable is set.
std::filesystem::path resolve_output(const RunConfig& cfg);

// Text of `kickent --help`.
std::string usage();

}  // namespace kickent
