#include "rabi2q/model.hpp"

#include <cmath>
#include <stdexcept>

namespace rabi2q {

void ModelParams::validate() const {
  for (double v : {eps1, eps2, omega, gx, gy, gz, g1, g2}) {
    if (!std::isfinite(v)) throw std::invalid_argument("model parameters must be finite");
  }
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
}

std::string to_string(Block b) {
  switch (b) {
    case Block::a: return "a";
    case Block::b: return "b";
    case Block::full: return "full";
  }
  return "?";
}

std::string to_string(Spin s) { return s == Spin::plus ? "+" : "-"; }

std::string to_string(const TwoQubitLabel& l) { return to_string(l.s1) + to_string(l.s2); }

TwoQubitLabel TwoQubitLabel::from_index(int i) {
  if (i < 0 || i > 3) throw std::out_of_range("two-qubit label index out of range");
  return {(i & 2) ? Spin::minus : Spin::plus, (i & 1) ? Spin::minus : Spin::plus};
}

std::pair<BlockParams, BlockParams> reduce_params(const ModelParams& p) {
  p.validate();
  BlockParams a{Block::a, p.eps1 + p.eps2, p.gx - p.gy, +p.gz, p.g1 + p.g2, p.omega};
  BlockParams b{Block::b, p.eps1 - p.eps2, p.gx + p.gy, -p.gz, p.g1 - p.g2, p.omega};
  return {a, b};
}

TwoQubitLabel map_state(Block block, Spin spin) {
  const Spin other = spin == Spin::plus ? Spin::minus : Spin::plus;
  switch (block) {
    case Block::a: return {spin, spin};
    case Block::b: return {spin, other};
    case Block::full: break;
  }
  throw std::invalid_argument("map_state expects block a or b");
}

std::pair<Block, Spin> unmap_state(const TwoQubitLabel& label) {
  return {label.parity() > 0 ? Block::a : Block::b, label.s1};
}

}  // namespace rabi2q
