#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rabi2q/model.hpp"
#include "rabi2q/spectrum.hpp"

namespace rabi2q {

/// Real state over |s1 s2> (x) |n>, index = TwoQubitLabel::index() * (ncut + 1) + n.
struct TwoQubitState {
  int ncut = 0;
  Eigen::VectorXd coeffs;

  double amplitude(const TwoQubitLabel& l, int n) const { return coeffs(l.index() * (ncut + 1) + n); }
};

/// Lifts a block eigenvector (fictitious spin (x) Fock) into the two-qubit basis.
TwoQubitState embed_block_state(Block block, const Eigen::VectorXd& block_coeffs, int ncut);

/// D(alpha)|0> truncated at ncut: c_n = exp(-alpha^2/2) alpha^n / sqrt(n!).
struct CoherentVector {
  double alpha = 0.0;
  int ncut = 0;
  Eigen::VectorXd coeffs;

  CoherentVector(double alpha, int ncut);
  double norm_deficit() const { return 1.0 - coeffs.squaredNorm(); }
};

/// Partial trace over the mode.
Eigen::Matrix4d reduced_density(const TwoQubitState& s);

/// Wootters concurrence of a real two-qubit density matrix. Throws
/// std::domain_error when the trace is off or an eigenvalue is below -1e-10.
double concurrence(const Eigen::Matrix4d& rho);

double magnetization(const TwoQubitState& s);
double photon_number(const TwoQubitState& s);
/// Weight on the highest retained Fock state; > 1e-8 signals truncation leakage.
double fock_leakage(const TwoQubitState& s);

struct GroundStateRecord {
  Block block = Block::a;
  double energy = 0.0;
  int ncut = 0;
  Backend backend = Backend::diagonalization;
  Eigen::VectorXd coeffs;  // fictitious spin (x) Fock basis of the block
  TwoQubitState state;
  double mz = 0.0;
  double nphot = 0.0;
  double concurrence = 0.0;
  double leakage = 0.0;
};

/// Ground level of one block: a single record, or one record per basis state
/// when the level is degenerate (gap < 1e-10 omega). At gamma == 0 the pair is
/// the two displaced states |++>D(-alpha)|0>, |-->D(alpha)|0> (block a).
struct GroundRecord {
  std::vector<GroundStateRecord> states;
  bool degenerate = false;

  double energy() const { return states.front().energy; }
};

/// Throws ConvergenceError when the block does not converge.
GroundRecord ground_record(const BlockParams& bp, const SolverOptions& opts = {});

struct OrderParameters {
  double mz = 0.0;
  double nphot = 0.0;
  double concurrence = 0.0;
};

/// Order parameters of the equal-weight mixture over a (possibly degenerate)
/// ground level; for a single state this is just that state's values.
OrderParameters ensemble_order_parameters(const GroundRecord& g);

}  // namespace rabi2q
