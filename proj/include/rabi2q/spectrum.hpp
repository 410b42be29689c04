#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rabi2q/fock.hpp"
#include "rabi2q/model.hpp"

namespace rabi2q {

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Backend { diagonalization, dqho, doublet, gfunction };
std::string to_string(Backend b);

/// Sorted eigenvalues of one block (or the full operator) at truncation ncut_used.
/// conv_estimate is the largest change of the reported levels over the last
/// truncation step; converged <=> conv_estimate < tolerance.
struct SpectrumResult {
  Block block = Block::a;
  std::vector<double> energies;
  int ncut_used = 0;
  bool converged = false;
  double conv_estimate = 0.0;
};

/// Truncation control. `ncut` pins a fixed truncation instead of the schedule.
struct SolverOptions {
  double tol = 1e-8;
  int nmax = 600;
  std::optional<int> ncut;
};

inline constexpr int kScheduleStep = 20;

/// First truncation of the schedule: max(40, ceil(12 a^2 + 8 |a|) + 20), a = g/omega.
int schedule_start(double alpha);

/// Lowest k eigenvalues of a dense operator. Throws std::domain_error if the
/// matrix is not exactly symmetric. The truncated operator is solved exactly,
/// so the result reports converged with a zero estimate.
SpectrumResult eigensolve(const TruncatedOperator& op, int k);

/// Eigenvalues plus the matching eigenvectors (one column per level).
struct Eigensystem {
  SpectrumResult spectrum;
  Eigen::MatrixXd vectors;
  int ncut = 0;
};

Eigensystem eigensystem(const TruncatedOperator& op, int k);

/// Diagonalizes a block on the truncation schedule until the lowest `levels`
/// energies move by less than opts.tol between successive truncations.
/// Never throws on non-convergence; check `spectrum.converged`.
Eigensystem converge_block(const BlockParams& bp, const SolverOptions& opts, int levels = 1);

SpectrumResult converge_ground(const BlockParams& bp, double tol = 1e-8, int nmax = 600);

struct AnalyticLevel {
  double energy = 0.0;
  Spin sign = Spin::plus;
  int n = 0;
};

/// omega (n - alpha^2) +- eps + shift for n < nlevels, sorted. Requires gamma == 0.
std::vector<AnalyticLevel> dqho_spectrum(const BlockParams& bp, int nlevels);

/// n omega +- sqrt(eps^2 + gamma^2) + shift for n < nlevels, sorted. Requires g == 0.
std::vector<AnalyticLevel> doublet_spectrum(const BlockParams& bp, int nlevels);

/// Preferred backend for a block: DQHO if gamma == 0, doublets if g == 0,
/// diagonalization otherwise.
Backend best_backend(const BlockParams& bp);

struct GroundEnergy {
  double energy = 0.0;
  Backend backend = Backend::diagonalization;
  int ncut = 0;
  bool converged = true;
};

GroundEnergy block_ground_energy(const BlockParams& bp, const SolverOptions& opts = {});

/// One merged level with its provenance. `level` counts within its block.
struct LevelEntry {
  double energy = 0.0;
  Block block = Block::a;
  int level = 0;
  Backend backend = Backend::diagonalization;
  int ncut = 0;  // 0 for analytic backends
  bool converged = true;
};

/// The k lowest levels of the full model, each block through its best backend.
std::vector<LevelEntry> four_series_spectrum(const ModelParams& p, int k, const SolverOptions& opts = {});

}  // namespace rabi2q
