// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace kickent {

// Supported envelope for the integer-order Bessel routines.
inline constexpr int kMaxBesselOrder = 1000;
inline constexpr double kMaxBesselArgument = 1.0e4;

// Values of magnitude below this are returned as exact zeros.
inline constexpr double kBesselUnderflow = 1.0e-300;

// J_k(x) for k in [min_order, max_order], all at one argument.
struct BesselRow {
  double x = 0.0;
  int min_order = 0;
  int max_order = 0;
  std::vector<double> values;

  double operator()(int order) const { return values[static_cast<std::size_t>(order - min_order)]; }
  std::size_t size() const { return values.size(); }
};

/// Bessel function of the first kind J_order(x), integer order.
///
/// Evaluated by Miller's downward recurrence started well above
/// max(|order|, |x|) and normalized with J_0 + 2 sum_k J_2k = 1.
/// Throws DomainError when |order| > 1000, |x| > 1e4 or x is not finite.
double bessel_j(int order, double x);

/// J_k(x) for every k in [min_order, max_order] from a single recurrence sweep.
///
/// Negative orders use J_{-k} = (-1)^k J_k, so the parity relation holds
/// exactly in the returned row.
BesselRow bessel_j_row(int min_order, int max_order, double x);

}  // namespace kickent
