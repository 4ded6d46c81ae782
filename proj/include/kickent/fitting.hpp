// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace kickent {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares y = slope * x + intercept. Needs >= 2 points.
// r_squared is 0 when y has no variance and the line is not exact.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// S = exp(log_prefactor) * b^exponent fitted in log-log space.
struct PowerLawFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double r_squared = 0.0;
};

// Throws DomainError with fewer than 3 points or any nonpositive value.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points);

// Residuals ln S - (exponent ln b + log_prefactor), in input order.
std::vector<double> power_law_residuals(std::span<const std::pair<double, double>> points, const PowerLawFit& fit);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

struct LinearWindow {
  std::size_t first = 0;  // inclusive
  std::size_t last = 0;   // inclusive
  LinearFit fit;

  std::size_t size() const { return last - first + 1; }
};

// Longest contiguous window of at least min_points whose linear fit has
// r^2 >= r2_min. Ties go to the earliest window.
std::optional<LinearWindow> detect_linear_window(std::span<const double> x, std::span<const double> y,
                                                 double r2_min = 0.995, std::size_t min_points = 4);

std::vector<double> logspace(double lo, double hi, int count);

}  // namespace kickent
