#include "rabi2q/fock.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace rabi2q {

namespace {

void check_ncut(int ncut) {
  if (ncut < 1) throw std::invalid_argument("ncut must be >= 1");
}

// Sets a symmetric pair of off-diagonal entries.
void set_pair(Eigen::MatrixXd& m, int i, int j, double v) {
  m(i, j) = v;
  m(j, i) = v;
}

}  // namespace

std::vector<BasisLabel> TruncatedOperator::basis() const {
  std::vector<BasisLabel> out;
  out.reserve(dim());
  for (int i = 0; i < dim(); ++i) out.push_back(label(i));
  return out;
}

TruncatedOperator build_block(const BlockParams& bp, int ncut) {
  check_ncut(ncut);
  TruncatedOperator op;
  op.kind = bp.block;
  op.ncut = ncut;
  const int d = ncut + 1;
  op.matrix = Eigen::MatrixXd::Zero(2 * d, 2 * d);
  for (int s = 0; s < 2; ++s) {
    const double sz = s == 0 ? 1.0 : -1.0;
    for (int n = 0; n <= ncut; ++n) {
      op.matrix(op.index(s, n), op.index(s, n)) = sz * bp.eps + bp.shift + bp.omega * n;
      if (n < ncut) set_pair(op.matrix, op.index(s, n), op.index(s, n + 1), sz * bp.g * std::sqrt(n + 1.0));
    }
  }
  for (int n = 0; n <= ncut; ++n) set_pair(op.matrix, op.index(0, n), op.index(1, n), bp.gamma);
  return op;
}

TruncatedOperator build_full(const ModelParams& p, int ncut) {
  p.validate();
  check_ncut(ncut);
  TruncatedOperator op;
  op.kind = Block::full;
  op.ncut = ncut;
  const int d = ncut + 1;
  op.matrix = Eigen::MatrixXd::Zero(4 * d, 4 * d);
  for (int s = 0; s < 4; ++s) {
    const auto l = TwoQubitLabel::from_index(s);
    const double z1 = sign_of(l.s1), z2 = sign_of(l.s2);
    const double coupling = p.g1 * z1 + p.g2 * z2;
    for (int n = 0; n <= ncut; ++n) {
      op.matrix(op.index(s, n), op.index(s, n)) = p.eps1 * z1 + p.eps2 * z2 + p.gz * z1 * z2 + p.omega * n;
      if (n < ncut) set_pair(op.matrix, op.index(s, n), op.index(s, n + 1), coupling * std::sqrt(n + 1.0));
    }
  }
  // s1x s2x + s1y s2y flip both spins: ++ <-> -- picks up gx - gy, +- <-> -+ picks up gx + gy.
  for (int n = 0; n <= ncut; ++n) {
    set_pair(op.matrix, op.index(0, n), op.index(3, n), p.gx - p.gy);
    set_pair(op.matrix, op.index(1, n), op.index(2, n), p.gx + p.gy);
  }
  return op;
}

double commutator_norm(const ModelParams& p, Observable obs, int ncut) {
  const auto op = build_full(p, ncut);
  auto value = [&](int i) {
    const auto l = TwoQubitLabel::from_index(op.label(i).spin);
    return obs == Observable::parity ? double(l.parity()) : double(sign_of(l.s1) + sign_of(l.s2));
  };
  double norm = 0.0;
  for (int i = 0; i < op.dim(); ++i)
    for (int j = 0; j < op.dim(); ++j)
      norm = std::max(norm, std::abs(op.matrix(i, j) * (value(j) - value(i))));
  return norm;
}

void dump_matrix(std::ostream& os, const TruncatedOperator& op) {
  os << std::setprecision(17);
  for (int i = 0; i < op.dim(); ++i) {
    for (int j = 0; j < op.dim(); ++j) os << (j ? " " : "") << op.matrix(i, j);
    os << '\n';
  }
}

}  // namespace rabi2q
