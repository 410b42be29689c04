#include "rabi2q/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rabi2q {

TwoQubitState embed_block_state(Block block, const Eigen::VectorXd& block_coeffs, int ncut) {
  const int d = ncut + 1;
  if (block_coeffs.size() != 2 * d) throw std::invalid_argument("embed_block_state: size mismatch");
  TwoQubitState s{ncut, Eigen::VectorXd::Zero(4 * d)};
  for (int f = 0; f < 2; ++f) {
    const int target = map_state(block, f == 0 ? Spin::plus : Spin::minus).index();
    s.coeffs.segment(target * d, d) = block_coeffs.segment(f * d, d);
  }
  return s;
}

CoherentVector::CoherentVector(double a, int n) : alpha(a), ncut(n), coeffs(n + 1) {
  if (n < 0) throw std::invalid_argument("CoherentVector: ncut must be >= 0");
  coeffs(0) = std::exp(-0.5 * a * a);
  for (int k = 1; k <= n; ++k) coeffs(k) = coeffs(k - 1) * a / std::sqrt(double(k));
}

Eigen::Matrix4d reduced_density(const TwoQubitState& s) {
  const int d = s.ncut + 1;
  Eigen::Matrix4d rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho(i, j) = s.coeffs.segment(i * d, d).dot(s.coeffs.segment(j * d, d));
  return rho;
}

double concurrence(const Eigen::Matrix4d& rho) {
  constexpr double psd_tol = 1e-10;
  if (std::abs(rho.trace() - 1.0) > 1e-8) throw std::domain_error("concurrence: density matrix trace != 1");
  if ((rho - rho.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::domain_error("concurrence: density matrix not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho);
  Eigen::Vector4d w = es.eigenvalues();
  if (w.minCoeff() < -psd_tol) throw std::domain_error("concurrence: density matrix not positive semidefinite");
  w = w.cwiseMax(0.0);
  const Eigen::Matrix4d sqrt_rho = es.eigenvectors() * w.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();

  // sy (x) sy is real in the product basis, and rho* = rho for real states.
  Eigen::Matrix4d flip = Eigen::Matrix4d::Zero();
  flip(0, 3) = flip(3, 0) = -1.0;
  flip(1, 2) = flip(2, 1) = 1.0;
  const Eigen::Matrix4d rho_tilde = flip * rho * flip;

  // Eigenvalues of sqrt(rho) rho~ sqrt(rho) are the squares of Wootters' lambdas.
  Eigen::Matrix4d m = sqrt_rho * rho_tilde * sqrt_rho;
  m = 0.5 * (m + m.transpose());
  Eigen::Vector4d lam = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(m, Eigen::EigenvaluesOnly).eigenvalues();
  lam = lam.cwiseMax(0.0).cwiseSqrt();
  std::sort(lam.data(), lam.data() + 4, std::greater<>());
  return std::clamp(lam(0) - lam(1) - lam(2) - lam(3), 0.0, 1.0);
}

double magnetization(const TwoQubitState& s) {
  const int d = s.ncut + 1;
  double mz = 0.0;
  for (int i = 0; i < 4; ++i) {
    const auto l = TwoQubitLabel::from_index(i);
    const int m = sign_of(l.s1) + sign_of(l.s2);
    if (m != 0) mz += 0.5 * m * s.coeffs.segment(i * d, d).squaredNorm();
  }
  return mz;
}

double photon_number(const TwoQubitState& s) {
  const int d = s.ncut + 1;
  double n_mean = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int n = 1; n < d; ++n) n_mean += n * s.coeffs(i * d + n) * s.coeffs(i * d + n);
  return n_mean;
}

double fock_leakage(const TwoQubitState& s) {
  const int d = s.ncut + 1;
  double w = 0.0;
  for (int i = 0; i < 4; ++i) w += s.coeffs(i * d + s.ncut) * s.coeffs(i * d + s.ncut);
  return w;
}

namespace {

constexpr double kDegeneracyGap = 1e-10;

GroundStateRecord make_record(const BlockParams& bp, double energy, Backend backend, Eigen::VectorXd coeffs, int ncut) {
  GroundStateRecord r;
  r.block = bp.block;
  r.energy = energy;
  r.ncut = ncut;
  r.backend = backend;
  r.state = embed_block_state(bp.block, coeffs, ncut);
  r.coeffs = std::move(coeffs);
  r.mz = magnetization(r.state);
  r.nphot = photon_number(r.state);
  r.concurrence = concurrence(reduced_density(r.state));
  r.leakage = fock_leakage(r.state);
  return r;
}

// Fictitious spin eigenstate (index 0 = |+>, 1 = |->) times an oscillator state.
Eigen::VectorXd spin_times(int spin, const Eigen::VectorXd& mode, int ncut) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * (ncut + 1));
  v.segment(spin * (ncut + 1), ncut + 1) = mode;
  return v;
}

GroundRecord dqho_ground(const BlockParams& bp) {
  const int ncut = schedule_start(bp.alpha());
  const double base = -bp.omega * bp.alpha() * bp.alpha() + bp.shift;
  GroundRecord out;
  // sz = +1 displaces the mode to -alpha, sz = -1 to +alpha.
  auto state = [&](int spin) {
    const double s = spin == 0 ? 1.0 : -1.0;
    return make_record(bp, base + s * bp.eps, Backend::dqho, spin_times(spin, CoherentVector(-s * bp.alpha(), ncut).coeffs, ncut),
                       ncut);
  };
  if (2.0 * std::abs(bp.eps) < kDegeneracyGap) {
    out.degenerate = true;
    out.states = {state(0), state(1)};
  } else {
    out.states = {state(bp.eps > 0.0 ? 1 : 0)};
  }
  return out;
}

GroundRecord doublet_ground(const BlockParams& bp) {
  const int ncut = schedule_start(0.0);
  const double r = std::hypot(bp.eps, bp.gamma);
  Eigen::VectorXd vacuum = Eigen::VectorXd::Zero(ncut + 1);
  vacuum(0) = 1.0;
  GroundRecord out;
  if (2.0 * r < kDegeneracyGap) {
    out.degenerate = true;
    for (int s = 0; s < 2; ++s) out.states.push_back(make_record(bp, bp.shift, Backend::doublet, spin_times(s, vacuum, ncut), ncut));
    return out;
  }
  // Null vector of [[eps + r, gamma], [gamma, r - eps]]; take the better conditioned row.
  Eigen::Vector2d u(bp.gamma, -(bp.eps + r));
  Eigen::Vector2d w(bp.eps - r, bp.gamma);
  Eigen::Vector2d spin = (u.squaredNorm() >= w.squaredNorm() ? u : w).normalized();
  Eigen::VectorXd v = spin(0) * spin_times(0, vacuum, ncut) + spin(1) * spin_times(1, vacuum, ncut);
  out.states.push_back(make_record(bp, bp.shift - r, Backend::doublet, std::move(v), ncut));
  return out;
}

GroundRecord numeric_ground(const BlockParams& bp, const SolverOptions& opts) {
  const auto es = converge_block(bp, opts, 2);
  if (!es.spectrum.converged)
    throw ConvergenceError("ground_record: block " + to_string(bp.block) + " did not converge (estimate " +
                           std::to_string(es.spectrum.conv_estimate) + ")");
  GroundRecord out;
  const auto& e = es.spectrum.energies;
  const int count = e.size() > 1 && e[1] - e[0] < kDegeneracyGap ? 2 : 1;
  out.degenerate = count == 2;
  for (int i = 0; i < count; ++i) out.states.push_back(make_record(bp, e[i], Backend::diagonalization, es.vectors.col(i), es.ncut));
  return out;
}

}  // namespace

GroundRecord ground_record(const BlockParams& bp, const SolverOptions& opts) {
  switch (best_backend(bp)) {
    case Backend::dqho: return dqho_ground(bp);
    case Backend::doublet: return doublet_ground(bp);
    default: return numeric_ground(bp, opts);
  }
}

OrderParameters ensemble_order_parameters(const GroundRecord& g) {
  if (g.states.size() == 1) {
    const auto& s = g.states.front();
    return {s.mz, s.nphot, s.concurrence};
  }
  OrderParameters o;
  Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
  const double w = 1.0 / g.states.size();
  for (const auto& s : g.states) {
    o.mz += w * s.mz;
    o.nphot += w * s.nphot;
    rho += w * reduced_density(s.state);
  }
  o.concurrence = concurrence(rho);
  return o;
}

}  // namespace rabi2q
