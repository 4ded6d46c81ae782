// SPDX-License-Identifier: Apache-2.0
// Acceptance checks. Usage: acceptance [criterion ...]; with no arguments runs all.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kickent/bessel.hpp"
#include "kickent/classical.hpp"
#include "kickent/entanglement.hpp"
#include "kickent/experiments.hpp"
#include "kickent/fitting.hpp"
#include "kickent/initial_states.hpp"
#include "kickent/quantum.hpp"
#include "kickent/torus_map.hpp"

using namespace kickent;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Report {
 public:
  void check(bool ok, const std::string& what) {
    pass_ = pass_ && ok;
    if (!detail_.empty()) detail_ += "; ";
    detail_ += what + (ok ? "" : " [fail]");
  }
  Outcome outcome() const { return {pass_, detail_}; }

 private:
  bool pass_ = true;
  std::string detail_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<std::pair<double, double>> positive(std::vector<std::pair<double, double>> pts) {
  std::erase_if(pts, [](const auto& p) { return !(p.first > 0.0 && p.second > 0.0); });
  return pts;
}

// Criteria 1 and 2 share the paired coupling sweep.
EntropySeries coupling_sweep(const std::vector<int>& times) {
  return run_coupling_sweep(logspace(0.01, 0.3, 12), times, 50, 0.1, ModeCutoff{24, 40});
}

Outcome criterion1() {
  const EntropySeries s = coupling_sweep({1});
  Report r;
  for (bool classical : {true, false}) {
    const PowerLawFit f = fit_power_law(positive(entropy_vs_coupling(s, 1, classical)));
    const std::string name = classical ? "classical" : "quantum";
    r.check(std::abs(f.exponent - 1.8) <= 0.2, name + " exponent " + fmt("%.4f", f.exponent));
    r.check(f.r_squared >= 0.98, name + " r^2 " + fmt("%.5f", f.r_squared));
  }
  return r.outcome();
}

Outcome criterion2() {
  const EntropySeries s = coupling_sweep({2});
  Report r;
  std::vector<double> resid[2];
  for (int k = 0; k < 2; ++k) {
    const auto pts = positive(entropy_vs_coupling(s, 2, k == 0));
    const PowerLawFit f = fit_power_law(pts);
    resid[k] = power_law_residuals(pts, f);
    r.check(f.exponent >= 1.4 && f.exponent <= 2.2,
            std::string(k == 0 ? "classical" : "quantum") + " exponent " + fmt("%.4f", f.exponent));
  }
  const bool aligned = resid[0].size() == resid[1].size();
  const double corr = aligned ? pearson_correlation(resid[0], resid[1]) : 0.0;
  r.check(aligned && corr > 0.0, "residual correlation " + fmt("%.4f", corr));
  return r.outcome();
}

Outcome criterion3() {
  const EntropySeries s = run_time_sweep(0.05, 6, 50, 0.1, ModeCutoff{24, 40});
  Report r;
  bool mono_c = true;
  bool mono_q = true;
  for (std::size_t i = 1; i < s.records.size(); ++i) {
    mono_c = mono_c && *s.records[i].S_classical >= *s.records[i - 1].S_classical;
    mono_q = mono_q && *s.records[i].S_quantum >= *s.records[i - 1].S_quantum;
  }
  const EntropyRecord& last = s.records.back();
  r.check(mono_c, "classical nondecreasing, S(6)=" + fmt("%.5f", *last.S_classical));
  r.check(mono_q, "quantum nondecreasing, S(6)=" + fmt("%.5f", *last.S_quantum));
  r.check(last.T == 6 && *last.raw_norm >= 0.99, "raw_norm(6)=" + fmt("%.8f", *last.raw_norm));
  return r.outcome();
}

Outcome criterion4() {
  const std::vector<int> Ns = {32, 64};
  const ChaoticSweepResult res = run_chaotic_sweep(6.0, 5.0, 0.001, Ns, 30);
  Report r;
  const double target = res.lyapunov_sum;
  r.check(true, "Lyapunov sum " + fmt("%.4f", target));
  std::vector<double> slopes;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    const LinearRegime lr = quantum_linear_regime(res.series[i]);
    const std::string tag = "N=" + std::to_string(Ns[i]);
    r.check(lr.max_entropy < std::log(static_cast<double>(Ns[i])), tag + " max S " + fmt("%.5f", lr.max_entropy));
    if (!lr.window) {
      r.check(false, tag + " no linear window");
      slopes.push_back(0.0);
      continue;
    }
    const double slope = lr.window->fit.slope;
    slopes.push_back(slope);
    r.check(std::abs(slope - target) <= 0.35 * target,
            tag + " window " + std::to_string(lr.window->size()) + " pts, slope " + fmt("%.4g", slope));
  }
  const double hi = std::max(slopes[0], slopes[1]);
  const double lo = std::min(slopes[0], slopes[1]);
  r.check(hi > 0.0 && (hi - lo) <= 0.2 * hi, "slope ratio " + fmt("%.3f", hi > 0.0 ? lo / hi : 0.0));
  return r.outcome();
}

Outcome criterion5() {
  Report r;
  const MapParams cases[] = {{0.0, 0.0, 0.0}, {1.0, 0.5, 0.0}, {6.0, 5.0, 0.0}};
  double worst = 0.0;
  for (const MapParams& p : cases) {
    const EntropySeries s = run_time_sweep(p, 10, 50, 0.1, ModeCutoff{10, 20});
    for (const EntropyRecord& rec : s.records) {
      worst = std::max({worst, std::abs(*rec.S_classical), std::abs(*rec.S_quantum)});
    }
  }
  r.check(worst <= 1e-10, "max |S| over T<=10, K in {(0,0),(1,0.5),(6,5)}: " + fmt("%.3g", worst));
  return r.outcome();
}

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  double s = 0.0;
  for (cplx& c : v) {
    c = cplx(g(rng), g(rng));
    s += std::norm(c);
  }
  for (cplx& c : v) c /= std::sqrt(s);
  return v;
}

Outcome criterion6() {
  Report r;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> uM(1, 3);

  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const ModeCutoff c{uM(rng), uM(rng)};
    const MapParams p{8.0 * u(rng), 8.0 * u(rng), 1.5 * u(rng)};
    ClassicalState s(c);
    const std::vector<cplx> v = random_vector(c.total_size(), rng);
    std::copy(v.begin(), v.end(), s.coeffs().begin());
    const Eigen::VectorXcd expect =
        dense_fp_matrix(c, p) * Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
    const ClassicalState got = fp_step(std::move(s), p);
    for (std::size_t i = 0; i < v.size(); ++i) {
      worst = std::max(worst, std::abs(got.coeffs()[i] - expect(static_cast<Eigen::Index>(i))));
    }
  }
  r.check(worst <= 1e-12, "(a) fp_step vs dense " + fmt("%.2e", worst));

  worst = 0.0;
  for (int N : {2, 4, 6, 8}) {
    for (int trial = 0; trial < 25; ++trial) {
      const QuantumPropagator p = build_propagator(N, MapParams{8.0 * u(rng), 8.0 * u(rng), u(rng)});
      QuantumState psi;
      psi.dims = QuantumDims{N};
      psi.amps = random_vector(psi.dims.total(), rng);
      const Eigen::Index n = N;
      Eigen::MatrixXcd U(n * n, n * n);
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
          for (Eigen::Index c = 0; c < n; ++c)
            for (Eigen::Index d = 0; d < n; ++d)
              U(a * n + b, c * n + d) = p.U1(a, c) * p.U2(b, d) * p.phases_b[static_cast<std::size_t>(c * n + d)];
      const Eigen::VectorXcd expect = U * Eigen::Map<const Eigen::VectorXcd>(psi.amps.data(), n * n);
      const QuantumState out = qstep(psi, p);
      for (Eigen::Index i = 0; i < n * n; ++i) worst = std::max(worst, std::abs(out.amps[static_cast<std::size_t>(i)] - expect(i)));
    }
  }
  r.check(worst <= 1e-12, "(b) qstep vs Kronecker " + fmt("%.2e", worst));

  worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t a = 2 + static_cast<std::size_t>(trial % 17);
    const std::size_t b = 2 + static_cast<std::size_t>((trial * 7) % 23);
    const std::vector<cplx> v = random_vector(a * b, rng);
    const SchmidtSpectrum s = schmidt_spectrum(v, a, b);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(reduced_density_oracle(v, a, b));
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + a);
    std::sort(ev.rbegin(), ev.rend());
    for (std::size_t i = 0; i < std::min(a, b); ++i) worst = std::max(worst, std::abs(ev[i] - s.probs[i]));
  }
  r.check(worst <= 1e-10, "(c) Schmidt vs reduced density " + fmt("%.2e", worst));
  return r.outcome();
}

Outcome criterion7() {
  Report r;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  {
    const QuantumPropagator p = build_propagator(50, MapParams{6.0, 5.0, 0.05});
    QuantumState psi = product_initial(50);
    for (int t = 0; t < 100; ++t) psi = qstep(std::move(psi), p);
    r.check(std::abs(psi.norm() - 1.0) <= 1e-10, "quantum norm drift " + fmt("%.2e", std::abs(psi.norm() - 1.0)));
  }
  {
    ClassicalState s = classical_gaussian_coeffs(ModeCutoff{6, 12}, 0.1);
    double prev = s.norm();
    double worst = -1.0;
    evolve(std::move(s), MapParams{6.0, 5.0, 0.3}, 20, [&](const ClassicalState&, const StepReport& rep) {
      const double n = std::sqrt(rep.raw_norm);
      worst = std::max(worst, n - prev);
      prev = n;
    });
    r.check(worst <= 1e-12, "classical norm max step increase " + fmt("%.2e", worst));
  }
  {
    bool bounds = true;
    double sym = 0.0;
    double inv = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::Index a = 2 + trial % 9;
      const Eigen::Index b = 3 + trial % 5;
      const std::vector<cplx> v = random_vector(static_cast<std::size_t>(a * b), rng);
      using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
      const RowMat m = Eigen::Map<const RowMat>(v.data(), a, b);
      const double S = von_neumann_entropy(schmidt_spectrum(v, static_cast<std::size_t>(a), static_cast<std::size_t>(b)));
      bounds = bounds && S >= 0.0 && S <= std::log(static_cast<double>(std::min(a, b))) + 1e-12;
      const RowMat mt = m.transpose();
      const double St = von_neumann_entropy(
          schmidt_spectrum(std::span<const cplx>(mt.data(), static_cast<std::size_t>(mt.size())),
                           static_cast<std::size_t>(b), static_cast<std::size_t>(a)));
      sym = std::max(sym, std::abs(S - St));
      auto haar = [&](Eigen::Index n) {
        std::normal_distribution<double> g;
        Eigen::MatrixXcd z(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
          for (Eigen::Index j = 0; j < n; ++j) z(i, j) = cplx(g(rng), g(rng));
        return Eigen::MatrixXcd(Eigen::HouseholderQR<Eigen::MatrixXcd>(z).householderQ());
      };
      const RowMat rot = haar(a) * m * haar(b).transpose();
      const double Sr = von_neumann_entropy(
          schmidt_spectrum(std::span<const cplx>(rot.data(), static_cast<std::size_t>(rot.size())),
                           static_cast<std::size_t>(a), static_cast<std::size_t>(b)));
      inv = std::max(inv, std::abs(S - Sr));
    }
    r.check(bounds, "0 <= S <= ln(min dim)");
    r.check(sym <= 1e-10, "swap symmetry " + fmt("%.2e", sym));
    r.check(inv <= 1e-10, "local-unitary invariance " + fmt("%.2e", inv));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const MapParams p{10.0 * u(rng), 10.0 * u(rng), 2.0 * u(rng)};
      worst = std::max(worst, std::abs(map_jacobian(TorusPoint{u(rng), u(rng), u(rng), u(rng)}, p).determinant() - 1.0));
    }
    r.check(worst <= 1e-12, "Jacobian |det-1| " + fmt("%.2e", worst));
  }
  {
    double rec = 0.0;
    double norm = 0.0;
    for (double x = 0.1; x <= 50.0; x += 0.173) {
      for (double sx : {x, -x}) {
        const BesselRow row = bessel_j_row(-201, 201, sx);
        for (int k = -200; k <= 200; ++k) {
          if (k == 0) continue;
          const double res = std::abs(row(k - 1) + row(k + 1) - (2.0 * k / sx) * row(k));
          rec = std::max(rec, res / std::max(1.0, std::abs(row(k))));
        }
        double s = row(0);
        for (int k = 2; k <= 200; k += 2) s += 2.0 * row(k);
        norm = std::max(norm, std::abs(s - 1.0));
      }
    }
    r.check(rec <= 1e-11, "Bessel recurrence " + fmt("%.2e", rec));
    r.check(norm <= 1e-10, "Bessel normalization " + fmt("%.2e", norm));
    bool parity = true;
    const BesselRow row = bessel_j_row(-300, 300, 37.7);
    for (int k = 1; k <= 300; ++k) parity = parity && row(-k) == ((k % 2) ? -row(k) : row(k));
    r.check(parity, "Bessel parity exact");
  }
  return r.outcome();
}

Outcome criterion8() {
  Report r;
  constexpr int kSupport = 4;
  constexpr int kT = 5;
  const ModeCutoff c{kSupport, kSupport + kT * kSupport};
  ClassicalState s(c);
  for (int m1 = -kSupport; m1 <= kSupport; ++m1)
    for (int n1 = -kSupport; n1 <= kSupport; ++n1)
      for (int m2 = -kSupport; m2 <= kSupport; ++m2)
        for (int n2 = -kSupport; n2 <= kSupport; ++n2)
          s.at(m1, n1, m2, n2) = gaussian_coeff(m1, n1, 0.1) * gaussian_coeff(m2, n2, 0.1);
  const ClassicalState initial = s;
  bool exact = true;
  bool linear = true;
  bool norm_kept = true;
  std::string growth;
  for (int T = 1; T <= kT; ++T) {
    s = fp_step(std::move(s), MapParams{});
    int max_n = 0;
    for (int m1 = -c.M_m; m1 <= c.M_m; ++m1)
      for (int n1 = -c.M_n; n1 <= c.M_n; ++n1)
        for (int m2 = -c.M_m; m2 <= c.M_m; ++m2)
          for (int n2 = -c.M_n; n2 <= c.M_n; ++n2) {
            const cplx v = s.at(m1, n1, m2, n2);
            const int s1 = n1 + T * m1;
            const int s2 = n2 + T * m2;
            const cplx expect = (std::abs(s1) <= kSupport && std::abs(s2) <= kSupport)
                                    ? initial.at(m1, s1, m2, s2)
                                    : cplx(0.0);
            exact = exact && v == expect;
            if (v != cplx(0.0)) max_n = std::max({max_n, std::abs(n1), std::abs(n2)});
          }
    linear = linear && max_n == kSupport + T * kSupport;
    norm_kept = norm_kept && s.raw_norm() == initial.raw_norm();
    growth += (T > 1 ? "," : "") + std::to_string(max_n);
  }
  r.check(exact, "exact shear a_T(m,n) = a_0(m, n+Tm)");
  r.check(linear, "max |n| by T = " + growth);
  r.check(norm_kept, "no boundary loss");
  return r.outcome();
}

}  // namespace

int main(int argc, char** argv) {
  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4,
                                               criterion5, criterion6, criterion7, criterion8};
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty()) {
    for (int i = 1; i <= 8; ++i) which.push_back(i);
  }
  bool all = true;
  for (int id : which) {
    if (id < 1 || id > 8) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[id - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s (%.1f s) %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
