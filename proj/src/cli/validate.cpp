#include <algorithm>
#include <cmath>
#include <sstream>

#include "rabi2q/cli.hpp"
#include "rabi2q/fock.hpp"
#include "rabi2q/observables.hpp"

namespace rabi2q::cli {

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

std::vector<double> sorted_eigenvalues(const TruncatedOperator& op) { return eigensolve(op, op.dim()).energies; }

double max_diff(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

CheckResult check_symmetry(const ModelParams& p, int ncut, bool inject) {
  auto full = build_full(p, ncut);
  if (inject) full.matrix(0, 1) += 1e-3;
  try {
    eigensolve(full, 1);
    const auto [a, b] = reduce_params(p);
    eigensolve(build_block(a, ncut), 1);
    eigensolve(build_block(b, ncut), 1);
  } catch (const std::domain_error& e) {
    return {"symmetry", false, e.what()};
  }
  return {"symmetry", true, "full and block operators exactly symmetric"};
}

CheckResult check_spectrum_union(const ModelParams& p, int ncut) {
  const auto [a, b] = reduce_params(p);
  auto merged = sorted_eigenvalues(build_block(a, ncut));
  const auto eb = sorted_eigenvalues(build_block(b, ncut));
  merged.insert(merged.end(), eb.begin(), eb.end());
  std::sort(merged.begin(), merged.end());
  const double d = max_diff(sorted_eigenvalues(build_full(p, ncut)), merged);
  return {"spectrum-union", d <= 1e-12, "max |eig(full) - eig(a)+eig(b)| = " + sci(d)};
}

CheckResult check_backend_equivalence(const ModelParams& p, const SolverOptions& opts) {
  auto [a, b] = reduce_params(p);
  // Exercise both analytic backends even when the given parameters select neither.
  BlockParams dq = a;
  dq.gamma = 0.0;
  BlockParams db = b;
  db.g = 0.0;
  constexpr int k = 8;
  const auto num_dq = converge_block(dq, opts, k);
  const auto num_db = converge_block(db, opts, k);
  const auto an_dq = dqho_spectrum(dq, k);
  const auto an_db = doublet_spectrum(db, k);
  double d = 0.0;
  for (int i = 0; i < k; ++i) {
    d = std::max(d, std::abs(num_dq.spectrum.energies[i] - an_dq[i].energy));
    d = std::max(d, std::abs(num_db.spectrum.energies[i] - an_db[i].energy));
  }
  const double bound = std::max(opts.tol, 1e-8);
  return {"backend-equivalence", d <= bound && num_dq.spectrum.converged,
          "DQHO/doublet vs diagonalization, 8 levels: max diff " + sci(d)};
}

CheckResult check_gz_shift(const ModelParams& p, int ncut) {
  constexpr double delta = 0.17;
  ModelParams q = p;
  q.gz += delta;
  const auto [a0, b0] = reduce_params(p);
  const auto [a1, b1] = reduce_params(q);
  const auto ea0 = sorted_eigenvalues(build_block(a0, ncut)), ea1 = sorted_eigenvalues(build_block(a1, ncut));
  const auto eb0 = sorted_eigenvalues(build_block(b0, ncut)), eb1 = sorted_eigenvalues(build_block(b1, ncut));
  double d = 0.0;
  for (std::size_t i = 0; i < ea0.size(); ++i) {
    d = std::max(d, std::abs(ea1[i] - ea0[i] - delta));
    d = std::max(d, std::abs(eb1[i] - eb0[i] + delta));
  }
  return {"gz-shift", d <= 1e-12, "block a +0.17, block b -0.17: max deviation " + sci(d)};
}

CheckResult check_parity(const ModelParams& p, int ncut) {
  const double c = commutator_norm(p, Observable::parity, ncut);
  return {"parity-conserved", c == 0.0, "||[H, s1z s2z]||max = " + sci(c)};
}

CheckResult check_total_sz(const ModelParams& p, int ncut) {
  const double c = commutator_norm(p, Observable::total_sz, ncut);
  if (p.gx == p.gy) return {"total-sz", c == 0.0, "gx == gy: ||[H, Sz]||max = " + sci(c)};
  return {"total-sz", c > 0.0, "gx != gy: Sz not conserved as expected, ||[H, Sz]||max = " + sci(c)};
}

CheckResult check_coherent_overlap(const ModelParams& p, const SolverOptions& opts) {
  auto [a, b] = reduce_params(p);
  a.gamma = 0.0;
  if (a.g == 0.0) a.g = 1.0;
  if (std::abs(a.eps) < 0.05) a.eps = 0.1;  // lift the sz degeneracy
  const auto es = converge_block(a, opts, 1);
  const int spin = a.eps > 0.0 ? 1 : 0;
  const double s = spin == 0 ? 1.0 : -1.0;
  const CoherentVector cv(-s * a.alpha(), es.ncut);
  const double overlap = std::abs(es.vectors.col(0).segment(spin * (es.ncut + 1), es.ncut + 1).dot(cv.coeffs));
  return {"coherent-overlap", overlap > 1.0 - 1e-8, "|<numeric GS|D(-+alpha)0>| = 1 - " + sci(1.0 - overlap)};
}

CheckResult check_concurrence_edges() {
  const double r = std::sqrt(0.5);
  auto pure = [](const Eigen::Vector4d& v) -> Eigen::Matrix4d { return v * v.transpose(); };
  double worst = 0.0;
  for (const auto& bell : {Eigen::Vector4d(r, 0, 0, r), Eigen::Vector4d(r, 0, 0, -r), Eigen::Vector4d(0, r, r, 0),
                           Eigen::Vector4d(0, r, -r, 0)})
    worst = std::max(worst, std::abs(concurrence(pure(bell)) - 1.0));
  for (int i = 0; i < 4; ++i) worst = std::max(worst, concurrence(pure(Eigen::Vector4d::Unit(i))));
  // (0.6|+> + 0.8|->) (x) |+>
  worst = std::max(worst, concurrence(pure(Eigen::Vector4d(0.6, 0.0, 0.8, 0.0))));
  return {"concurrence-edges", worst <= 1e-12, "Bell states -> 1, product states -> 0, max error " + sci(worst)};
}

CheckResult check_monotone_truncation(const ModelParams& p) {
  auto [a, b] = reduce_params(p);
  double prev = INFINITY, worst = 0.0;
  for (int n = 5; n <= 60; n += 5) {
    const double e = eigensolve(build_block(a, n), 1).energies.front();
    worst = std::max(worst, e - prev);
    prev = e;
  }
  return {"monotone-truncation", worst <= 1e-12, "E0(N) of block a non-increasing for N = 5..60"};
}

}  // namespace

std::vector<CheckResult> run_validation(const RunConfig& cfg) {
  const auto& p = cfg.model;
  const int ncut = cfg.ncut.value_or(30);
  const auto opts = SolverOptions{cfg.tol, cfg.nmax, std::nullopt};
  std::vector<CheckResult> out;
  out.push_back(check_symmetry(p, ncut, cfg.inject_asymmetry));
  out.push_back(check_spectrum_union(p, ncut));
  out.push_back(check_backend_equivalence(p, opts));
  out.push_back(check_gz_shift(p, ncut));
  out.push_back(check_parity(p, ncut));
  out.push_back(check_total_sz(p, ncut));
  out.push_back(check_coherent_overlap(p, opts));
  out.push_back(check_concurrence_edges());
  out.push_back(check_monotone_truncation(p));
  return out;
}

}  // namespace rabi2q::cli
