// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rabi2q/fock.hpp"
#include "rabi2q/gfunction.hpp"
#include "rabi2q/observables.hpp"
#include "rabi2q/phase_scan.hpp"
#include "rabi2q/spectrum.hpp"

using namespace rabi2q;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v, int prec = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

ModelParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng), 1.0, u(rng), u(rng), u(rng), u(rng), u(rng)};
}

std::vector<double> all_eigenvalues(const TruncatedOperator& op) { return eigensolve(op, op.dim()).energies; }

Outcome isotropic_unbiased() {
  ModelParams p;
  p.gx = p.gy = 0.3;
  const auto c = refine_critical({p, {}}, Axis::g, 0.0, 1.2);
  return {std::abs(c.value - 0.774597) <= 1e-3, "g_c = " + num(c.value) + " (target 0.774597 +- 1e-3)"};
}

Outcome anisotropic_unbiased() {
  ModelParams p;
  p.gx = 0.4;
  p.gy = 0.2;
  SolverOptions opts;
  opts.tol = 1e-8;
  opts.nmax = 300;
  const ScanTemplate t{p, {}};
  const auto c = refine_critical(t, Axis::g, 0.0, 1.2, opts);
  const auto [a, b] = reduce_params(t.at(Axis::g, c.value));
  const auto num_a = converge_ground(a, 1e-8, 300);
  const auto gf = gfunction_spectrum(a.gamma, a.g, a.omega, 1.0, 1);
  const double gf_e0 = gf.roots.empty() ? NAN : gf.roots.front().energy;
  const double diff = std::abs(gf_e0 - num_a.energies[0]);
  const bool ok = std::abs(c.value - 0.714) <= 0.005 && num_a.converged && num_a.ncut_used <= 300 && diff <= 1e-6;
  return {ok, "g_c = " + num(c.value) + " (target 0.714 +- 0.005), E0a diag " + num(num_a.energies[0], 12) +
                  " at N=" + std::to_string(num_a.ncut_used) + ", G-function " + num(gf_e0, 12) + ", |diff| = " +
                  num(diff, 3)};
}

Outcome mixed_coupling() {
  ModelParams p;
  p.gx = p.gy = 0.2;
  const auto c = refine_critical({p, {1.25, 0.25}}, Axis::g, 0.0, 1.2);
  return {std::abs(c.value - 0.491) <= 0.005, "g_c = " + num(c.value) + " (target 0.491 +- 0.005)"};
}

Outcome biased_no_transition() {
  ModelParams p;
  p.eps1 = p.eps2 = 0.4;
  p.gx = p.gy = 0.3;
  const auto pts = scan_line({p, {}}, Axis::g, 0.0, 1.2, 0.01);
  int changes = 0;
  double min_abs = INFINITY;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    min_abs = std::min(min_abs, std::abs(pts[i].dE));
    if (i + 1 < pts.size() && std::signbit(pts[i].dE) != std::signbit(pts[i + 1].dE)) ++changes;
  }
  return {changes == 0, std::to_string(pts.size()) + " points, " + std::to_string(changes) +
                            " sign changes, min |dE| = " + num(min_abs, 4)};
}

Outcome spectrum_union() {
  std::mt19937 rng(20240501);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_params(rng);
    const auto [a, b] = reduce_params(p);
    auto merged = all_eigenvalues(build_block(a, 30));
    const auto eb = all_eigenvalues(build_block(b, 30));
    merged.insert(merged.end(), eb.begin(), eb.end());
    std::sort(merged.begin(), merged.end());
    const auto full = all_eigenvalues(build_full(p, 30));
    if (full.size() != merged.size()) return {false, "dimension mismatch"};
    for (std::size_t i = 0; i < full.size(); ++i) worst = std::max(worst, std::abs(full[i] - merged[i]));
  }
  return {worst <= 1e-12, "50 random sets at N=30, max deviation " + num(worst, 3)};
}

Outcome analytic_backends() {
  ModelParams p;
  p.eps1 = 0.2;
  p.eps2 = 0.1;
  p.gx = p.gy = 0.3;  // block a: gamma = 0 (DQHO); block b: g = g1 - g2 = 0 (doublets)
  const ScanTemplate t{p, {}};
  SolverOptions opts;
  opts.tol = 1e-10;
  double worst = 0.0;
  bool converged = true;
  for (int i = 0; i < 10; ++i) {
    const double g = 1.2 * i / 9;
    const auto [a, b] = reduce_params(t.at(Axis::g, g));
    const auto na = converge_block(a, opts, 8), nb = converge_block(b, opts, 8);
    converged = converged && na.spectrum.converged && nb.spectrum.converged;
    for (int n = 0; n < 8; ++n) {
      // closed forms written out here rather than taken from the library
      std::vector<double> fa, fb;
      for (int m = 0; m < 8; ++m) {
        for (double s : {-1.0, 1.0}) {
          fa.push_back(m - g * g + s * a.eps);
          fb.push_back(m + s * std::hypot(b.eps, b.gamma));
        }
      }
      std::sort(fa.begin(), fa.end());
      std::sort(fb.begin(), fb.end());
      worst = std::max({worst, std::abs(na.spectrum.energies[n] - fa[n]), std::abs(nb.spectrum.energies[n] - fb[n])});
      worst = std::max({worst, std::abs(dqho_spectrum(a, 8)[n].energy - fa[n]),
                        std::abs(doublet_spectrum(b, 8)[n].energy - fb[n])});
    }
  }
  return {converged && worst <= 1e-7, "8 levels x 10 g in [0, 1.2], max deviation " + num(worst, 3)};
}

Outcome order_parameter_jump() {
  ModelParams p;
  p.eps1 = p.eps2 = 0.2;
  p.gx = p.gy = 0.3;
  const ScanTemplate t{p, {}};
  const double gc = refine_critical(t, Axis::g, 0.0, 1.2).value;
  const auto b = evaluate_point(t, t.at(Axis::g, gc - 0.01));
  const double ga = gc + 0.01;
  const auto a = evaluate_point(t, t.at(Axis::g, ga));
  const bool b_ok = b.phase == Phase::B && b.mz == 0.0 && b.nphot == 0.0 && std::abs(b.concurrence - 1.0) <= 1e-12;
  const bool a_ok = a.phase == Phase::A && std::abs(a.mz + 1.0) <= 1e-12 && std::abs(a.nphot - ga * ga) <= 1e-6 &&
                    std::abs(a.concurrence) <= 1e-10;
  return {b_ok && a_ok, "g_c = " + num(gc) + "; B side (" + num(b.mz) + ", " + num(b.nphot) + ", " +
                            num(b.concurrence, 15) + "); A side (" + num(a.mz, 15) + ", " + num(a.nphot) + " vs " +
                            num(ga * ga) + ", " + num(a.concurrence, 3) + ")"};
}

Outcome coherent_fidelity() {
  double worst = 1.0;
  for (double eps : {0.2, -0.2})
    for (double alpha = 0.25; alpha <= 1.5 + 1e-12; alpha += 0.25) {
      const BlockParams bp{Block::a, eps, 0.0, 0.0, alpha, 1.0};
      const auto es = converge_block(bp, {}, 1);
      const int spin = eps > 0 ? 1 : 0;  // lower level has sz = -sign(eps)
      const double s = spin == 0 ? 1.0 : -1.0;
      const int d = es.ncut + 1;
      // sz = s pairs with D(-s alpha)|0>; amplitudes from the Poisson weights
      Eigen::VectorXd ref(d);
      for (int n = 0; n < d; ++n)
        ref(n) = std::pow(-s, n) * std::exp(-0.5 * alpha * alpha + n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0));
      const double o1 = std::abs(es.vectors.col(0).segment(spin * d, d).dot(ref));
      const double o2 = std::abs(es.vectors.col(0).segment(spin * d, d).dot(CoherentVector(-s * alpha, es.ncut).coeffs));
      worst = std::min({worst, o1, o2});
    }
  return {worst > 1.0 - 1e-8, "alpha in 0.25..1.5, both bias signs: min overlap = 1 - " + num(1.0 - worst, 3)};
}

Outcome concurrence_oracle() {
  double worst = 0.0;
  const int ncut = 80;
  const int d = ncut + 1;
  for (double alpha : {0.4, 0.8, 1.2}) {
    TwoQubitState st{ncut, Eigen::VectorXd::Zero(4 * d)};
    st.coeffs.segment(0, d) = CoherentVector(-alpha, ncut).coeffs;  // |++> D(-alpha)|0>
    st.coeffs.segment(3 * d, d) = CoherentVector(alpha, ncut).coeffs;  // |--> D(alpha)|0>
    st.coeffs.normalize();
    // brute-force partial trace of |psi><psi|
    const Eigen::MatrixXd full = st.coeffs * st.coeffs.transpose();
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int n = 0; n < d; ++n) rho(i, j) += full(i * d + n, j * d + n);
    worst = std::max(worst, std::abs(concurrence(rho) - std::exp(-2 * alpha * alpha)));
  }
  return {worst <= 1e-8, "alpha in {0.4, 0.8, 1.2}: max |C - exp(-2 alpha^2)| = " + num(worst, 3)};
}

Outcome gz_shift() {
  std::mt19937 rng(77);
  constexpr double delta = 0.17;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_params(rng);
    auto q = p;
    q.gz += delta;
    const auto [a0, b0] = reduce_params(p);
    const auto [a1, b1] = reduce_params(q);
    const auto ea0 = all_eigenvalues(build_block(a0, 30)), ea1 = all_eigenvalues(build_block(a1, 30));
    const auto eb0 = all_eigenvalues(build_block(b0, 30)), eb1 = all_eigenvalues(build_block(b1, 30));
    for (std::size_t i = 0; i < ea0.size(); ++i)
      worst = std::max({worst, std::abs(ea1[i] - ea0[i] - delta), std::abs(eb1[i] - eb0[i] + delta)});
  }
  return {worst <= 1e-12, "20 random sets at N=30, max deviation " + num(worst, 3)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"isotropic unbiased critical coupling", isotropic_unbiased},
      {"anisotropic unbiased critical coupling", anisotropic_unbiased},
      {"mixed-coupling critical coupling", mixed_coupling},
      {"no transition for eps > gamma", biased_no_transition},
      {"spectrum union of the two blocks", spectrum_union},
      {"analytic backends vs diagonalization", analytic_backends},
      {"order-parameter discontinuity", order_parameter_jump},
      {"coherent-state fidelity", coherent_fidelity},
      {"concurrence of the cat state", concurrence_oracle},
      {"gz shift of the block spectra", gz_shift},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%zu] %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    if (!o.pass) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
