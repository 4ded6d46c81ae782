// SPDX-License-Identifier: Apache-2.0
#include "kickent/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kickent/bessel.hpp"
#include "kickent/errors.hpp"
#include "kickent/parallel.hpp"

namespace kickent {

unsigned ExecutionOptions::resolved_workers() const {
  if (strict) return 1;
  if (workers != 0) return workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

void validate(const ModeCutoff& cutoff) {
  if (cutoff.M_m < 1 || cutoff.M_n < 1) {
    throw DomainError("ModeCutoff: M_m and M_n must be positive (got " + std::to_string(cutoff.M_m) + ", " +
                      std::to_string(cutoff.M_n) + ")");
  }
  if (cutoff.M_m > kMaxBesselOrder / 2 || cutoff.M_n > 100000) {
    throw DomainError("ModeCutoff: lattice too large");
  }
}

ClassicalState::ClassicalState(ModeCutoff cutoff, std::size_t memory_budget) : cutoff_(cutoff) {
  validate(cutoff_);
  const std::size_t bytes = cutoff_.total_size() * sizeof(cplx);
  if (bytes > memory_budget) {
    throw BudgetError("ClassicalState: lattice (" + std::to_string(cutoff_.m_extent()) + "x" +
                      std::to_string(cutoff_.n_extent()) + ")^2 needs " + std::to_string(bytes) +
                      " bytes, budget is " + std::to_string(memory_budget));
  }
  coeffs_.assign(cutoff_.total_size(), cplx{0.0, 0.0});
}

std::size_t ClassicalState::offset(int m1, int n1, int m2, int n2) const {
  const std::size_t lm = static_cast<std::size_t>(cutoff_.m_extent());
  const std::size_t ln = static_cast<std::size_t>(cutoff_.n_extent());
  const auto j1 = static_cast<std::size_t>(m1 + cutoff_.M_m);
  const auto i1 = static_cast<std::size_t>(n1 + cutoff_.M_n);
  const auto j2 = static_cast<std::size_t>(m2 + cutoff_.M_m);
  const auto i2 = static_cast<std::size_t>(n2 + cutoff_.M_n);
  return ((j1 * ln + i1) * lm + j2) * ln + i2;
}

double ClassicalState::raw_norm() const {
  double s = 0.0;
  for (const cplx& c : coeffs_) s += std::norm(c);
  return s;
}

double ClassicalState::norm() const { return std::sqrt(raw_norm()); }

bool ClassicalState::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const cplx& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

void ClassicalState::mark_initial() { norm0 = norm(); }

ClassicalState new_state(ModeCutoff cutoff, std::size_t memory_budget) {
  return ClassicalState(cutoff, memory_budget);
}

namespace {

// Bessel weights J_l(x) for |l| <= support; entries below kernel_eps are zeroed.
struct KernelRow {
  int support = 0;
  std::vector<double> w;  // w[l + support]

  double operator()(int l) const { return w[static_cast<std::size_t>(l + support)]; }
};

KernelRow make_kernel_row(double x, int max_shift, double eps) {
  KernelRow row;
  if (x == 0.0) {
    row.w = {1.0};
    return row;
  }
  const BesselRow j = bessel_j_row(-max_shift, max_shift, x);
  int support = 0;
  for (int l = 0; l <= max_shift; ++l) {
    if (std::abs(j(l)) >= eps) support = l;
  }
  row.support = support;
  row.w.resize(static_cast<std::size_t>(2 * support + 1));
  for (int l = -support; l <= support; ++l) {
    const double v = j(l);
    row.w[static_cast<std::size_t>(l + support)] = std::abs(v) >= eps ? v : 0.0;
  }
  return row;
}

// Dense (2H+1)x(2H+1) array addressed by signed (u1, u2).
struct Box {
  int half = 0;
  std::vector<cplx>* data = nullptr;

  int extent() const { return 2 * half + 1; }
  cplx& operator()(int u1, int u2) const {
    return (*data)[static_cast<std::size_t>((u1 + half) * extent() + (u2 + half))];
  }
};

// Two successive diagonal convolutions:
//   mid(u)  = sum_l first(l)  * in(u1 + l, u2 + s1 l)      over the box widened by second.support
//   out(t)  = sum_l second(l) * mid(t1 + l, t2 + s2 l)
// The widened intermediate makes the composition equal to the one-shot
// compressed 2D kernel: sources off the lattice read as zero, nothing
// reachable is clipped in between.
void diagonal_convolve(const Box& in, const Box& out, std::vector<cplx>& mid_buf, const KernelRow& first, int s1,
                       const KernelRow& second, int s2) {
  const int M = in.half;
  const int H = M + second.support;
  mid_buf.assign(static_cast<std::size_t>((2 * H + 1) * (2 * H + 1)), cplx{0.0, 0.0});
  const Box mid{H, &mid_buf};

  for (int u1 = -H; u1 <= H; ++u1) {
    for (int u2 = -H; u2 <= H; ++u2) {
      int lo = std::max({-first.support, -M - u1});
      int hi = std::min({first.support, M - u1});
      if (s1 > 0) {
        lo = std::max(lo, -M - u2);
        hi = std::min(hi, M - u2);
      } else {
        lo = std::max(lo, u2 - M);
        hi = std::min(hi, u2 + M);
      }
      cplx acc{0.0, 0.0};
      for (int l = lo; l <= hi; ++l) {
        const double w = first(l);
        if (w != 0.0) acc += w * in(u1 + l, u2 + s1 * l);
      }
      mid(u1, u2) = acc;
    }
  }

  for (int t1 = -M; t1 <= M; ++t1) {
    for (int t2 = -M; t2 <= M; ++t2) {
      cplx acc{0.0, 0.0};
      for (int l = -second.support; l <= second.support; ++l) {
        const double w = second(l);
        if (w != 0.0) acc += w * mid(t1 + l, t2 + s2 * l);
      }
      out(t1, t2) = acc;
    }
  }
}

}  // namespace

ClassicalState apply_interaction(ClassicalState state, double b, const ExecutionOptions& exec) {
  if (!std::isfinite(b)) throw DomainError("apply_interaction: non-finite coupling");
  if (b == 0.0) return state;

  const ModeCutoff c = state.cutoff();
  const int Mm = c.M_m;
  const int Mn = c.M_n;
  const int Lm = c.m_extent();
  const int Ln = c.n_extent();
  const int max_shift = 2 * Mm;

  // x_pm = b (n1 +- n2) / 2 only depends on s = n1 +- n2 in [-2Mn, 2Mn].
  std::vector<KernelRow> table(static_cast<std::size_t>(4 * Mn + 1));
  for (int s = -2 * Mn; s <= 2 * Mn; ++s) {
    table[static_cast<std::size_t>(s + 2 * Mn)] = make_kernel_row(0.5 * b * s, max_shift, exec.kernel_eps);
  }
  auto kernel = [&](int s) -> const KernelRow& { return table[static_cast<std::size_t>(s + 2 * Mn)]; };

  std::span<cplx> a = state.coeffs();
  const std::size_t slices = static_cast<std::size_t>(Ln) * static_cast<std::size_t>(Ln);
  const std::size_t stride_m2 = static_cast<std::size_t>(Ln);
  const std::size_t stride_m1 = static_cast<std::size_t>(Ln) * Lm * Ln;

  parallel_for(slices, exec.resolved_workers(), [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> in_buf(static_cast<std::size_t>(Lm * Lm));
    std::vector<cplx> out_buf(static_cast<std::size_t>(Lm * Lm));
    std::vector<cplx> mid_buf;
    const Box in{Mm, &in_buf};
    const Box out{Mm, &out_buf};
    for (std::size_t slice = begin; slice < end; ++slice) {
      const int i1 = static_cast<int>(slice / static_cast<std::size_t>(Ln));
      const int i2 = static_cast<int>(slice % static_cast<std::size_t>(Ln));
      const std::size_t base = static_cast<std::size_t>(i1) * Lm * Ln + static_cast<std::size_t>(i2);

      bool any = false;
      for (int j1 = 0; j1 < Lm; ++j1) {
        for (int j2 = 0; j2 < Lm; ++j2) {
          const cplx v = a[base + j1 * stride_m1 + j2 * stride_m2];
          in_buf[static_cast<std::size_t>(j1 * Lm + j2)] = v;
          any = any || v != cplx{0.0, 0.0};
        }
      }
      if (!any) continue;

      const int n1 = i1 - Mn;
      const int n2 = i2 - Mn;
      const KernelRow& kp = kernel(n1 + n2);  // l+ runs along (1, 1)
      const KernelRow& km = kernel(n1 - n2);  // l- runs along (1, -1)

      // Pick the ordering whose widened intermediate is cheaper.
      const double Lp = 2.0 * kp.support + 1.0;
      const double Lq = 2.0 * km.support + 1.0;
      const double cost_plus_first = std::pow(Lm + 2.0 * km.support, 2) * Lp + Lm * Lm * Lq;
      const double cost_minus_first = std::pow(Lm + 2.0 * kp.support, 2) * Lq + Lm * Lm * Lp;
      if (cost_plus_first <= cost_minus_first) {
        diagonal_convolve(in, out, mid_buf, kp, +1, km, -1);
      } else {
        diagonal_convolve(in, out, mid_buf, km, -1, kp, +1);
      }

      for (int j1 = 0; j1 < Lm; ++j1) {
        for (int j2 = 0; j2 < Lm; ++j2) {
          a[base + j1 * stride_m1 + j2 * stride_m2] = out_buf[static_cast<std::size_t>(j1 * Lm + j2)];
        }
      }
    }
  });
  return state;
}

namespace {

// Shear then kick on one particle's (m, n) grid, row-major Lm x Ln.
//   sheared(m, n') = grid(m, n' + m)
//   grid'(m', n')  = sum_m J_{m'-m}(K n') sheared(m, n')
void shear_kick_grid(std::vector<cplx>& grid, std::vector<cplx>& tmp, const ModeCutoff& c,
                     const std::vector<KernelRow>* kick) {
  const int Mm = c.M_m;
  const int Lm = c.m_extent();
  const int Ln = c.n_extent();
  tmp.assign(grid.size(), cplx{0.0, 0.0});
  for (int j = 0; j < Lm; ++j) {
    const int m = j - Mm;
    for (int i = 0; i < Ln; ++i) {
      const int src = i + m;
      if (src >= 0 && src < Ln) tmp[static_cast<std::size_t>(j * Ln + i)] = grid[static_cast<std::size_t>(j * Ln + src)];
    }
  }
  if (kick == nullptr) {
    grid.swap(tmp);
    return;
  }
  for (int i = 0; i < Ln; ++i) {
    const KernelRow& row = (*kick)[static_cast<std::size_t>(i)];
    for (int jt = 0; jt < Lm; ++jt) {
      const int lo = std::max(0, jt - row.support);
      const int hi = std::min(Lm - 1, jt + row.support);
      cplx acc{0.0, 0.0};
      for (int js = lo; js <= hi; ++js) {
        const double w = row(jt - js);
        if (w != 0.0) acc += w * tmp[static_cast<std::size_t>(js * Ln + i)];
      }
      grid[static_cast<std::size_t>(jt * Ln + i)] = acc;
    }
  }
}

std::vector<KernelRow> kick_table(double K, const ModeCutoff& c, double eps) {
  std::vector<KernelRow> rows;
  rows.reserve(static_cast<std::size_t>(c.n_extent()));
  for (int n = -c.M_n; n <= c.M_n; ++n) rows.push_back(make_kernel_row(K * n, 2 * c.M_m, eps));
  return rows;
}

}  // namespace

ClassicalState apply_single_particle(ClassicalState state, double K1, double K2, const ExecutionOptions& exec) {
  if (!std::isfinite(K1) || !std::isfinite(K2)) throw DomainError("apply_single_particle: non-finite kick");
  const ModeCutoff c = state.cutoff();
  const std::size_t pdim = c.particle_dim();
  const unsigned workers = exec.resolved_workers();
  std::span<cplx> a = state.coeffs();

  std::vector<KernelRow> kick1;
  std::vector<KernelRow> kick2;
  if (K1 != 0.0) kick1 = kick_table(K1, c, exec.kernel_eps);
  if (K2 != 0.0) kick2 = kick_table(K2, c, exec.kernel_eps);

  // Particle 2: the (m2, n2) grid is contiguous for each spectator (m1, n1).
  parallel_for(pdim, workers, [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> grid(pdim);
    std::vector<cplx> tmp;
    for (std::size_t spect = begin; spect < end; ++spect) {
      auto block = a.subspan(spect * pdim, pdim);
      std::copy(block.begin(), block.end(), grid.begin());
      shear_kick_grid(grid, tmp, c, K2 != 0.0 ? &kick2 : nullptr);
      std::copy(grid.begin(), grid.end(), block.begin());
    }
  });

  // Particle 1: grid element (m1, n1) sits at stride pdim.
  parallel_for(pdim, workers, [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> grid(pdim);
    std::vector<cplx> tmp;
    for (std::size_t spect = begin; spect < end; ++spect) {
      for (std::size_t k = 0; k < pdim; ++k) grid[k] = a[k * pdim + spect];
      shear_kick_grid(grid, tmp, c, K1 != 0.0 ? &kick1 : nullptr);
      for (std::size_t k = 0; k < pdim; ++k) a[k * pdim + spect] = grid[k];
    }
  });
  return state;
}

ClassicalState fp_step(ClassicalState state, const MapParams& params, const ExecutionOptions& exec) {
  state = apply_interaction(std::move(state), params.b, exec);
  state = apply_single_particle(std::move(state), params.K1, params.K2, exec);
  ++state.time;
  return state;
}

ClassicalState evolve(ClassicalState state, const MapParams& params, int T, const StepObserver& observer,
                      const ExecutionOptions& exec) {
  if (T < 0) throw DomainError("evolve: T must be nonnegative");
  const double start = state.raw_norm();
  double before = start;
  for (int t = 0; t < T; ++t) {
    state = fp_step(std::move(state), params, exec);
    const double after = state.raw_norm();
    if (observer) {
      observer(state, StepReport{state.time, after, before - after, start - after});
    }
    before = after;
  }
  return state;
}

Eigen::MatrixXcd dense_fp_matrix(const ModeCutoff& cutoff, const MapParams& params) {
  validate(cutoff);
  const std::size_t dim = cutoff.total_size();
  if (dim > kDenseOracleMaxDim) {
    throw DomainError("dense_fp_matrix: lattice dimension " + std::to_string(dim) + " exceeds " +
                      std::to_string(kDenseOracleMaxDim));
  }
  const int Mm = cutoff.M_m;
  const int Mn = cutoff.M_n;
  const int Lshift = 2 * Mm;

  // Closed-form Bessel factors tabulated with single evaluations.
  auto tabulate = [&](double scale, int s_lo, int s_hi) {
    std::vector<std::vector<double>> t;
    for (int s = s_lo; s <= s_hi; ++s) {
      std::vector<double> row;
      for (int l = -Lshift; l <= Lshift; ++l) row.push_back(bessel_j(l, scale * s));
      t.push_back(std::move(row));
    }
    return t;
  };
  const auto kick1 = tabulate(params.K1, -Mn, Mn);
  const auto kick2 = tabulate(params.K2, -Mn, Mn);
  const auto coup = tabulate(0.5 * params.b, -2 * Mn, 2 * Mn);
  auto J_kick = [&](const std::vector<std::vector<double>>& t, int l, int n) {
    return t[static_cast<std::size_t>(n + Mn)][static_cast<std::size_t>(l + Lshift)];
  };
  auto J_coup = [&](int l, int s) {
    return coup[static_cast<std::size_t>(s + 2 * Mn)][static_cast<std::size_t>(l + Lshift)];
  };

  const ClassicalState layout(cutoff);
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));

  // <m',n'| (P1 x P2) |k,j> = J_{m1'-k1}(K1 n1') J_{m2'-k2}(K2 n2') delta(j1 - k1, n1') delta(j2 - k2, n2')
  // <k,j| P_b |m,n>        = J_{l+}(b(n1+n2)/2) J_{l-}(b(n1-n2)/2) delta(j, n),
  //                          l+- = ((m1 - k1) +- (m2 - k2)) / 2
  // so the intermediate m-label is fixed at k_i = n_i - n_i'.
  for (int m1p = -Mm; m1p <= Mm; ++m1p)
    for (int n1p = -Mn; n1p <= Mn; ++n1p)
      for (int m2p = -Mm; m2p <= Mm; ++m2p)
        for (int n2p = -Mn; n2p <= Mn; ++n2p) {
          const auto row = static_cast<Eigen::Index>(layout.offset(m1p, n1p, m2p, n2p));
          for (int n1 = -Mn; n1 <= Mn; ++n1) {
            const int k1 = n1 - n1p;
            if (k1 < -Mm || k1 > Mm) continue;
            const double w1 = J_kick(kick1, m1p - k1, n1p);
            if (w1 == 0.0) continue;
            for (int n2 = -Mn; n2 <= Mn; ++n2) {
              const int k2 = n2 - n2p;
              if (k2 < -Mm || k2 > Mm) continue;
              const double w2 = J_kick(kick2, m2p - k2, n2p);
              if (w2 == 0.0) continue;
              for (int m1 = -Mm; m1 <= Mm; ++m1)
                for (int m2 = -Mm; m2 <= Mm; ++m2) {
                  const int d1 = m1 - k1;
                  const int d2 = m2 - k2;
                  if ((d1 + d2) % 2 != 0) continue;
                  const int lp = (d1 + d2) / 2;
                  const int lm = (d1 - d2) / 2;
                  const double wb = J_coup(lp, n1 + n2) * J_coup(lm, n1 - n2);
                  if (wb == 0.0) continue;
                  const auto col = static_cast<Eigen::Index>(layout.offset(m1, n1, m2, n2));
                  P(row, col) += w1 * w2 * wb;
                }
            }
          }
        }
  return P;
}

}  // namespace kickent
