#include "rabi2q/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rabi2q {

std::string to_string(Backend b) {
  switch (b) {
    case Backend::diagonalization: return "diag";
    case Backend::dqho: return "dqho";
    case Backend::doublet: return "doublet";
    case Backend::gfunction: return "gfunction";
  }
  return "?";
}

int schedule_start(double alpha) {
  const double a = std::abs(alpha);
  return std::max(40, static_cast<int>(std::ceil(12.0 * a * a + 8.0 * a)) + 20);
}

Eigensystem eigensystem(const TruncatedOperator& op, int k) {
  if (k < 0 || k > op.dim()) throw std::invalid_argument("eigensolve: k must lie in [0, dim]");
  if (op.matrix != op.matrix.transpose()) throw std::domain_error("eigensolve: operator is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.matrix);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolve: decomposition failed");

  Eigensystem out;
  out.ncut = op.ncut;
  out.spectrum.block = op.kind;
  out.spectrum.ncut_used = op.ncut;
  out.spectrum.converged = true;
  out.spectrum.energies.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + k);
  out.vectors = solver.eigenvectors().leftCols(k);
  return out;
}

SpectrumResult eigensolve(const TruncatedOperator& op, int k) { return eigensystem(op, k).spectrum; }

namespace {

double max_level_change(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Eigensystem solve_at(const BlockParams& bp, int ncut, int levels) {
  auto op = build_block(bp, ncut);
  return eigensystem(op, std::min(levels, op.dim()));
}

}  // namespace

Eigensystem converge_block(const BlockParams& bp, const SolverOptions& opts, int levels) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("converge: tol must be positive");
  if (levels < 1) throw std::invalid_argument("converge: levels must be >= 1");

  // Without mode coupling the operator is block diagonal in n: truncation is exact.
  const bool exact = bp.g == 0.0;

  if (opts.ncut) {
    auto cur = solve_at(bp, *opts.ncut, levels);
    double est = 0.0;
    if (!exact) {
      const int prev_n = *opts.ncut - kScheduleStep;
      est = prev_n >= 1 ? max_level_change(solve_at(bp, prev_n, levels).spectrum.energies, cur.spectrum.energies)
                        : std::numeric_limits<double>::infinity();
    }
    cur.spectrum.conv_estimate = est;
    cur.spectrum.converged = est < opts.tol;
    return cur;
  }

  int n = std::min(schedule_start(bp.alpha()), std::max(opts.nmax, 1));
  std::optional<Eigensystem> prev;
  for (;;) {
    auto cur = solve_at(bp, n, levels);
    if (exact) {
      cur.spectrum.conv_estimate = 0.0;
      cur.spectrum.converged = true;
      return cur;
    }
    if (prev) {
      const double est = max_level_change(prev->spectrum.energies, cur.spectrum.energies);
      cur.spectrum.conv_estimate = est;
      cur.spectrum.converged = est < opts.tol;
      if (cur.spectrum.converged) return cur;
    } else {
      cur.spectrum.conv_estimate = std::numeric_limits<double>::infinity();
      cur.spectrum.converged = false;
    }
    if (n >= opts.nmax) return cur;
    prev = std::move(cur);
    n = std::min(n + kScheduleStep, opts.nmax);
  }
}

SpectrumResult converge_ground(const BlockParams& bp, double tol, int nmax) {
  return converge_block(bp, SolverOptions{tol, nmax, std::nullopt}, 1).spectrum;
}

namespace {

std::vector<AnalyticLevel> two_branch_levels(const BlockParams& bp, int nlevels, double offset, double split) {
  if (nlevels < 0) throw std::invalid_argument("nlevels must be >= 0");
  std::vector<AnalyticLevel> out;
  out.reserve(2 * nlevels);
  for (int n = 0; n < nlevels; ++n) {
    const double base = bp.omega * n + offset + bp.shift;
    out.push_back({base - split, Spin::minus, n});
    out.push_back({base + split, Spin::plus, n});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.energy < y.energy; });
  return out;
}

}  // namespace

std::vector<AnalyticLevel> dqho_spectrum(const BlockParams& bp, int nlevels) {
  if (bp.gamma != 0.0) throw std::invalid_argument("dqho_spectrum requires gamma == 0");
  const double a = bp.alpha();
  // Spin::plus/minus here is the sz eigenvalue, so the split carries the sign of eps.
  auto levels = two_branch_levels(bp, nlevels, -bp.omega * a * a, std::abs(bp.eps));
  if (bp.eps < 0.0)
    for (auto& l : levels) l.sign = l.sign == Spin::plus ? Spin::minus : Spin::plus;
  return levels;
}

std::vector<AnalyticLevel> doublet_spectrum(const BlockParams& bp, int nlevels) {
  if (bp.g != 0.0) throw std::invalid_argument("doublet_spectrum requires g == 0");
  return two_branch_levels(bp, nlevels, 0.0, std::hypot(bp.eps, bp.gamma));
}

Backend best_backend(const BlockParams& bp) {
  if (bp.gamma == 0.0) return Backend::dqho;
  if (bp.g == 0.0) return Backend::doublet;
  return Backend::diagonalization;
}

GroundEnergy block_ground_energy(const BlockParams& bp, const SolverOptions& opts) {
  switch (best_backend(bp)) {
    case Backend::dqho: return {dqho_spectrum(bp, 1).front().energy, Backend::dqho, 0, true};
    case Backend::doublet: return {doublet_spectrum(bp, 1).front().energy, Backend::doublet, 0, true};
    default: break;
  }
  const auto es = converge_block(bp, opts, 1);
  return {es.spectrum.energies.front(), Backend::diagonalization, es.ncut, es.spectrum.converged};
}

namespace {

std::vector<LevelEntry> block_levels(const BlockParams& bp, int k, const SolverOptions& opts) {
  std::vector<LevelEntry> out;
  const Backend backend = best_backend(bp);
  if (backend == Backend::diagonalization) {
    const auto es = converge_block(bp, opts, k);
    for (std::size_t i = 0; i < es.spectrum.energies.size(); ++i)
      out.push_back({es.spectrum.energies[i], bp.block, int(i), backend, es.ncut, es.spectrum.converged});
    return out;
  }
  const auto levels = backend == Backend::dqho ? dqho_spectrum(bp, k) : doublet_spectrum(bp, k);
  for (int i = 0; i < k && i < int(levels.size()); ++i) out.push_back({levels[i].energy, bp.block, i, backend, 0, true});
  return out;
}

}  // namespace

std::vector<LevelEntry> four_series_spectrum(const ModelParams& p, int k, const SolverOptions& opts) {
  if (k < 0) throw std::invalid_argument("four_series_spectrum: k must be >= 0");
  if (k == 0) return {};
  const auto [a, b] = reduce_params(p);
  auto merged = block_levels(a, k, opts);
  const auto lb = block_levels(b, k, opts);
  merged.insert(merged.end(), lb.begin(), lb.end());
  std::stable_sort(merged.begin(), merged.end(), [](const auto& x, const auto& y) { return x.energy < y.energy; });
  merged.resize(std::min<std::size_t>(merged.size(), k));
  return merged;
}

}  // namespace rabi2q
