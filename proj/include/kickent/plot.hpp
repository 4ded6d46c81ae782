// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "kickent/experiments.hpp"

namespace kickent {

struct PlotSpec {
  enum class Axes { coupling_loglog, time_linear };
  Axes axes = Axes::time_linear;
  std::string title;
  std::string config_hash;  // embedded as an XML comment
};

/// Static SVG rendering of one or more series. coupling_loglog draws S
/// against b on log axes, one curve per (pipeline, T), with the fitted
/// power-law exponent in the legend. time_linear draws S against T, one
/// curve per (pipeline, series). Output is a pure function of the input.
std::string render_svg(std::span<const EntropySeries> series, const PlotSpec& spec);
void emit_plot(std::span<const EntropySeries> series, const std::filesystem::path& path, const PlotSpec& spec);
void emit_plot(const EntropySeries& series, const std::filesystem::path& path, const PlotSpec& spec);

}  // namespace kickent
