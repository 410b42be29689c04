#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "rabi2q/model.hpp"

namespace rabi2q {

/// One basis vector |spin> (x) |n>. For block operators `spin` is the
/// fictitious spin (0 = |+>, 1 = |->); for the full operator it is the
/// TwoQubitLabel index in the (++, +-, -+, --) ordering.
struct BasisLabel {
  int spin = 0;
  int n = 0;
};

/// Dense real symmetric operator on a truncated spin (x) Fock space.
/// Basis index = spin * (ncut + 1) + n.
struct TruncatedOperator {
  Block kind = Block::a;
  int ncut = 0;
  Eigen::MatrixXd matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
  int spin_count() const { return kind == Block::full ? 4 : 2; }
  int index(int spin, int n) const { return spin * (ncut + 1) + n; }
  BasisLabel label(int i) const { return {i / (ncut + 1), i % (ncut + 1)}; }
  std::vector<BasisLabel> basis() const;
};

TruncatedOperator build_block(const BlockParams& bp, int ncut);
TruncatedOperator build_full(const ModelParams& p, int ncut);

enum class Observable { parity, total_sz };

/// max |[H, O]_ij| over the truncated space. Both observables are diagonal
/// in the product basis, so the commutator entries are H_ij (O_j - O_i).
double commutator_norm(const ModelParams& p, Observable obs, int ncut);

/// Row-major, space separated, one row per line.
void dump_matrix(std::ostream& os, const TruncatedOperator& op);

}  // namespace rabi2q
