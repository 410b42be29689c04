#pragma once

#include <string>
#include <utility>

namespace rabi2q {

/// Physical parameters of the two-qubit Rabi-like Hamiltonian
///
///   H = eps1 s1z + eps2 s2z + omega a^+a + gx s1x s2x + gy s1y s2y
///       + gz s1z s2z + (g1 s1z + g2 s2z)(a + a^+)
///
/// Every energy is expressed in units of omega (default 1).
struct ModelParams {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double omega = 1.0;
  double gx = 0.0;
  double gy = 0.0;
  double gz = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;

  /// Throws std::invalid_argument when omega <= 0 or any field is not finite.
  void validate() const;
};

enum class Block { a, b, full };
enum class Spin { plus, minus };

std::string to_string(Block b);
std::string to_string(Spin s);
inline int sign_of(Spin s) { return s == Spin::plus ? 1 : -1; }

/// Effective single-spin Rabi parameters of one invariant subspace:
///   H_block = eps sz + gamma sx + shift + omega a^+a + g (a + a^+) sz
struct BlockParams {
  Block block = Block::a;
  double eps = 0.0;
  double gamma = 0.0;
  double shift = 0.0;
  double g = 0.0;
  double omega = 1.0;

  double alpha() const { return g / omega; }
};

/// Computational-basis label of the physical qubit pair.
struct TwoQubitLabel {
  Spin s1 = Spin::plus;
  Spin s2 = Spin::plus;

  /// Eigenvalue of s1z s2z: +1 for block a labels, -1 for block b labels.
  int parity() const { return sign_of(s1) * sign_of(s2); }
  /// Index in the (++, +-, -+, --) ordering.
  int index() const { return 2 * (s1 == Spin::minus) + (s2 == Spin::minus); }
  static TwoQubitLabel from_index(int i);

  friend bool operator==(const TwoQubitLabel&, const TwoQubitLabel&) = default;
};

std::string to_string(const TwoQubitLabel& l);

/// Exact parameter map onto the two decoupled blocks.
std::pair<BlockParams, BlockParams> reduce_params(const ModelParams& p);

/// Fictitious spin of a block -> two-qubit label: |+>_a=|++>, |->_a=|-->,
/// |+>_b=|+->, |->_b=|-+>.
TwoQubitLabel map_state(Block block, Spin spin);
std::pair<Block, Spin> unmap_state(const TwoQubitLabel& label);

}  // namespace rabi2q
