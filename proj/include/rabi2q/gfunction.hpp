#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "rabi2q/model.hpp"

namespace rabi2q {

// Analytic spectrum of the symmetric Rabi block
//
//   H = delta sx + omega a^+a + g (a + a^+) sz
//
// through Braak's G-function. In the spectral variable x = E + g^2/omega,
//
//   G_pm(x) = sum_n K_n(x) [1 -+ delta/(x - n omega)] (g/omega)^n,
//   n K_n = f_{n-1} K_{n-1} - K_{n-2},  K_0 = 1, K_1 = f_0,
//   f_n(x) = 2g/omega + (n omega - x + delta^2/(x - n omega)) / (2g),
//
// and the regular eigenvalues of parity pm are the zeros of G_pm. Poles sit at
// x = n omega. Parity minus carries the ground state when delta > 0.

struct GFunctionOptions {
  int ncoef_max = 2000;
  double pole_radius = 1e-6;  // in units of omega
  double grid_step = 0.02;    // in units of omega
  double root_tol = 1e-10;    // final bracket width in units of omega
};

class PoleProximityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SeriesDivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double gfunction_eval(double x, double delta, double g, double omega, Spin parity, const GFunctionOptions& opts = {});

struct GFunctionRoot {
  double x = 0.0;
  double energy = 0.0;  // x - g^2/omega
  Spin parity = Spin::plus;
  double residual = 0.0;  // |G(x)| at the refined root; NaN for exceptional roots
  bool exceptional = false;
};

struct GFunctionSpectrum {
  std::vector<GFunctionRoot> roots;                   // sorted by energy
  std::vector<std::pair<double, double>> skipped;    // x brackets where evaluation failed
};

/// Scans x from -|delta| - 2 omega up to xmax, brackets sign changes of G_pm
/// between poles, refines them by bisection and keeps at most k roots per
/// parity. Eigenvalues inside the pole exclusion radius cannot be resolved by
/// G; they are taken from a diagonalization of the same block and flagged
/// exceptional. For delta = 0 every level sits on a pole (x = n omega, both
/// parities) and is returned as exceptional.
GFunctionSpectrum gfunction_spectrum(double delta, double g, double omega, double xmax, int k,
                                     const GFunctionOptions& opts = {});

}  // namespace rabi2q
