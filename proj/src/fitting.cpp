// SPDX-License-Identifier: Apache-2.0
#include "kickent/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kickent/errors.hpp"

namespace kickent {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("linear_fit: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DomainError("linear_fit: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  if (syy > 0.0) {
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  } else {
    fit.r_squared = ss_res == 0.0 ? 1.0 : 0.0;
  }
  return fit;
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw DomainError("fit_power_law: need at least 3 points");
  std::vector<double> lx;
  std::vector<double> ly;
  lx.reserve(points.size());
  ly.reserve(points.size());
  for (const auto& [b, S] : points) {
    if (!(b > 0.0) || !(S > 0.0)) {
      throw DomainError("fit_power_law: nonpositive data point (" + std::to_string(b) + ", " + std::to_string(S) + ")");
    }
    lx.push_back(std::log(b));
    ly.push_back(std::log(S));
  }
  const LinearFit line = linear_fit(lx, ly);
  return PowerLawFit{line.slope, line.intercept, line.r_squared};
}

std::vector<double> power_law_residuals(std::span<const std::pair<double, double>> points, const PowerLawFit& fit) {
  std::vector<double> r;
  r.reserve(points.size());
  for (const auto& [b, S] : points) r.push_back(std::log(S) - (fit.exponent * std::log(b) + fit.log_prefactor));
  return r;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("pearson_correlation: need >= 2 paired points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::optional<LinearWindow> detect_linear_window(std::span<const double> x, std::span<const double> y,
                                                 double r2_min, std::size_t min_points) {
  if (x.size() != y.size()) throw DomainError("detect_linear_window: size mismatch");
  min_points = std::max<std::size_t>(min_points, 2);
  const std::size_t n = x.size();
  for (std::size_t len = n; len >= min_points && len > 0; --len) {
    for (std::size_t first = 0; first + len <= n; ++first) {
      const LinearFit fit = linear_fit(x.subspan(first, len), y.subspan(first, len));
      if (fit.r_squared >= r2_min) return LinearWindow{first, first + len - 1, fit};
    }
  }
  return std::nullopt;
}

std::vector<double> logspace(double lo, double hi, int count) {
  if (count < 1 || !(lo > 0.0) || !(hi > 0.0)) throw DomainError("logspace: invalid range");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(std::exp(a + step * i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace kickent
