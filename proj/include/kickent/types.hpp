// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>

namespace kickent {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Kick strengths of the two standard maps and the coupling of
// V = -K1/(2pi)^2 cos(2pi q1) - K2/(2pi)^2 cos(2pi q2) + b/(2pi)^2 cos(2pi q1) cos(2pi q2).
struct MapParams {
  double K1 = 0.0;
  double K2 = 0.0;
  double b = 0.0;

  bool operator==(const MapParams&) const = default;
};

// Threading and truncation knobs shared by the operator kernels.
struct ExecutionOptions {
  // 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
  // Strict mode runs every kernel on a single worker.
  bool strict = false;
  // Bessel factors with |J| below this are dropped from convolution kernels.
  double kernel_eps = 1.0e-14;

  unsigned resolved_workers() const;
};

}  // namespace kickent
