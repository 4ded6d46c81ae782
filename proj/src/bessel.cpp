// SPDX-License-Identifier: Apache-2.0
#include "kickent/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "kickent/errors.hpp"

namespace kickent {
namespace {

constexpr double kRescaleThreshold = 1.0e250;
constexpr double kRescaleFactor = 1.0e-250;

// Below this argument the two-correction power series is exact to double precision.
constexpr double kSeriesArgument = 1.0e-6;

void check_envelope(int order, double x) {
  if (!std::isfinite(x)) {
    throw DomainError("bessel_j: non-finite argument");
  }
  if (std::abs(order) > kMaxBesselOrder) {
    throw DomainError("bessel_j: |order| = " + std::to_string(std::abs(order)) + " exceeds " +
                      std::to_string(kMaxBesselOrder));
  }
  if (std::abs(x) > kMaxBesselArgument) {
    throw DomainError("bessel_j: |x| = " + std::to_string(std::abs(x)) + " exceeds 1e4");
  }
}

double flush(double v) { return std::abs(v) < kBesselUnderflow ? 0.0 : v; }

// J_0(ax) .. J_kmax(ax) for ax >= 0.
std::vector<double> nonnegative_orders(int kmax, double ax) {
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (ax == 0.0) {
    out[0] = 1.0;
    return out;
  }

  if (ax < kSeriesArgument) {
    const double h = 0.5 * ax;
    const double h2 = h * h;
    double lead = 1.0;  // (x/2)^k / k!
    for (int k = 0; k <= kmax; ++k) {
      if (k > 0) lead *= h / k;
      if (lead == 0.0) break;
      const double corr = 1.0 - h2 / (k + 1) + h2 * h2 / (2.0 * (k + 1) * (k + 2));
      out[static_cast<std::size_t>(k)] = flush(lead * corr);
    }
    return out;
  }

  // Miller: J is the minimal solution of the three-term recurrence, so the
  // downward sweep converges to it from an arbitrary start far enough up.
  const double top = std::max(static_cast<double>(kmax), ax);
  int start = static_cast<int>(top + 20.0 + std::sqrt(160.0 * top));
  if (start % 2 != 0) ++start;

  double upper = 0.0;  // f_{k+1}
  double cur = 1.0;    // f_k, beginning at k = start
  double norm_sum = 2.0 * cur;
  for (int k = start; k >= 1; --k) {
    const double lower = (2.0 * k / ax) * cur - upper;
    upper = cur;
    cur = lower;
    const int j = k - 1;
    if (j <= kmax) out[static_cast<std::size_t>(j)] = cur;
    if (j % 2 == 0) norm_sum += (j == 0 ? 1.0 : 2.0) * cur;
    if (std::abs(cur) > kRescaleThreshold) {
      cur *= kRescaleFactor;
      upper *= kRescaleFactor;
      norm_sum *= kRescaleFactor;
      for (int i = std::max(j, 0); i <= kmax; ++i) out[static_cast<std::size_t>(i)] *= kRescaleFactor;
    }
  }

  for (auto& v : out) v = flush(v / norm_sum);
  return out;
}

}  // namespace

double bessel_j(int order, double x) {
  const BesselRow row = bessel_j_row(order, order, x);
  return row.values.front();
}

BesselRow bessel_j_row(int min_order, int max_order, double x) {
  if (min_order > max_order) {
    throw DomainError("bessel_j_row: min_order > max_order");
  }
  check_envelope(min_order, x);
  check_envelope(max_order, x);

  const int kmax = std::max(std::abs(min_order), std::abs(max_order));
  const std::vector<double> base = nonnegative_orders(kmax, std::abs(x));

  BesselRow row;
  row.x = x;
  row.min_order = min_order;
  row.max_order = max_order;
  row.values.reserve(static_cast<std::size_t>(max_order - min_order) + 1);
  for (int k = min_order; k <= max_order; ++k) {
    const int ak = std::abs(k);
    double v = base[static_cast<std::size_t>(ak)];
    // J_{-k}(x) = (-1)^k J_k(x) and J_k(-x) = (-1)^k J_k(x).
    const bool flip = (ak % 2 != 0) && ((k < 0) != (x < 0.0));
    row.values.push_back(flip ? -v : v);
  }
  return row;
}

}  // namespace kickent
