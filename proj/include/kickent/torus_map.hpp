// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "kickent/types.hpp"

namespace kickent {

// Phase-space point on T^2 x T^2, every coordinate in [0, 1).
struct TorusPoint {
  double q1 = 0.0;
  double p1 = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;

  bool operator==(const TorusPoint&) const = default;
};

// x mod 1 in [0, 1).
double wrap_unit(double x);

/// Coupled standard maps on T^4:
///   q_i' = q_i + p_i,  p_i' = p_i - dV/dq_i evaluated at q',
/// with dV/dq1 = (K1/2pi) sin(2pi q1) - (b/2pi) sin(2pi q1) cos(2pi q2) and
/// symmetrically for q2.
TorusPoint map_step(const TorusPoint& pt, const MapParams& params);

// Jacobian d(q1',p1',q2',p2')/d(q1,p1,q2,p2) of map_step at pt.
Eigen::Matrix4d map_jacobian(const TorusPoint& pt, const MapParams& params);

// Advances pt and multiplies the tangent matrix by the Jacobian of the step.
std::pair<TorusPoint, Eigen::Matrix4d> tangent_step(const TorusPoint& pt, const Eigen::Matrix4d& tangent,
                                                    const MapParams& params);

/// Benettin estimate of the four Lyapunov exponents (per kick, natural log),
/// sorted descending. The orbit starts from a point drawn uniformly with
/// the given seed, discards n_transient steps and re-orthonormalizes the
/// tangent frame by QR after every step.
std::array<double, 4> lyapunov_exponents(const MapParams& params, int n_transient, int n_steps,
                                         std::uint64_t seed);

}  // namespace kickent
