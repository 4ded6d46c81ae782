// SPDX-License-Identifier: Apache-2.0
#include "kickent/torus_map.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "kickent/errors.hpp"

namespace kickent {

double wrap_unit(double x) {
  double r = x - std::floor(x);
  // x slightly below an integer can round up to exactly 1.
  if (r >= 1.0) r = 0.0;
  return r;
}

namespace {

struct Force {
  double f1, f2;                // dV/dq1, dV/dq2
  double h11, h12, h22;         // second derivatives of V
};

Force force(double q1, double q2, const MapParams& p) {
  const double s1 = std::sin(kTwoPi * q1);
  const double c1 = std::cos(kTwoPi * q1);
  const double s2 = std::sin(kTwoPi * q2);
  const double c2 = std::cos(kTwoPi * q2);
  Force f{};
  f.f1 = (p.K1 / kTwoPi) * s1 - (p.b / kTwoPi) * s1 * c2;
  f.f2 = (p.K2 / kTwoPi) * s2 - (p.b / kTwoPi) * c1 * s2;
  f.h11 = p.K1 * c1 - p.b * c1 * c2;
  f.h22 = p.K2 * c2 - p.b * c1 * c2;
  f.h12 = p.b * s1 * s2;
  return f;
}

}  // namespace

TorusPoint map_step(const TorusPoint& pt, const MapParams& params) {
  const double q1 = wrap_unit(pt.q1 + pt.p1);
  const double q2 = wrap_unit(pt.q2 + pt.p2);
  const Force f = force(q1, q2, params);
  return TorusPoint{q1, wrap_unit(pt.p1 - f.f1), q2, wrap_unit(pt.p2 - f.f2)};
}

Eigen::Matrix4d map_jacobian(const TorusPoint& pt, const MapParams& params) {
  const double q1 = wrap_unit(pt.q1 + pt.p1);
  const double q2 = wrap_unit(pt.q2 + pt.p2);
  const Force f = force(q1, q2, params);
  // Rows of dq' are (1 1 0 0) and (0 0 1 1); dp_i' = dp_i - H_i1 dq1' - H_i2 dq2'.
  Eigen::Matrix4d J;
  // clang-format off
  J << 1.0,     1.0,           0.0,     0.0,
       -f.h11,  1.0 - f.h11,   -f.h12,  -f.h12,
       0.0,     0.0,           1.0,     1.0,
       -f.h12,  -f.h12,        -f.h22,  1.0 - f.h22;
  // clang-format on
  return J;
}

std::pair<TorusPoint, Eigen::Matrix4d> tangent_step(const TorusPoint& pt, const Eigen::Matrix4d& tangent,
                                                    const MapParams& params) {
  return {map_step(pt, params), map_jacobian(pt, params) * tangent};
}

std::array<double, 4> lyapunov_exponents(const MapParams& params, int n_transient, int n_steps,
                                         std::uint64_t seed) {
  if (n_steps < 1 || n_transient < 0) throw DomainError("lyapunov_exponents: invalid step counts");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  TorusPoint pt{unit(rng), unit(rng), unit(rng), unit(rng)};
  for (int t = 0; t < n_transient; ++t) pt = map_step(pt, params);

  Eigen::Matrix4d Q = Eigen::Matrix4d::Identity();
  Eigen::Vector4d sums = Eigen::Vector4d::Zero();
  for (int t = 0; t < n_steps; ++t) {
    const Eigen::Matrix4d M = map_jacobian(pt, params) * Q;
    pt = map_step(pt, params);
    Eigen::HouseholderQR<Eigen::Matrix4d> qr(M);
    const Eigen::Matrix4d R = qr.matrixQR().triangularView<Eigen::Upper>();
    Q = qr.householderQ();
    for (int i = 0; i < 4; ++i) sums(i) += std::log(std::abs(R(i, i)));
  }
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = sums(i) / n_steps;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace kickent
