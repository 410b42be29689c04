#include "rabi2q/gfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rabi2q/spectrum.hpp"

namespace rabi2q {

double gfunction_eval(double x, double delta, double g, double omega, Spin parity, const GFunctionOptions& opts) {
  if (!(omega > 0.0)) throw std::invalid_argument("gfunction: omega must be positive");
  if (g == 0.0) throw std::invalid_argument("gfunction: g must be nonzero");

  const double X = x / omega;
  const double D = delta / omega;
  const double c = g / omega;
  const double sign = parity == Spin::plus ? -1.0 : 1.0;  // G_+ carries 1 - D/(X-n)

  if (D != 0.0) {
    const double nearest = std::round(X);
    if (nearest >= 0.0 && std::abs(X - nearest) < opts.pole_radius)
      throw PoleProximityError("gfunction: x within exclusion radius of pole n omega");
  }

  auto f = [&](int n) { return 2.0 * c + (n - X + D * D / (X - n)) / (2.0 * c); };
  auto weight = [&](int n) { return 1.0 + sign * D / (X - n); };

  // a_n = K_n c^n obeys n a_n = c f_{n-1} a_{n-1} - c^2 a_{n-2}.
  double a_prev = 0.0;
  double a_cur = 1.0;
  double sum = weight(0);
  double running_max = std::abs(sum);
  int small = 0;
  const int settle = static_cast<int>(std::max(0.0, std::ceil(X))) + 2;
  for (int n = 1; n <= opts.ncoef_max; ++n) {
    const double a_next = (c * f(n - 1) * a_cur - c * c * a_prev) / n;
    a_prev = a_cur;
    a_cur = a_next;
    const double term = a_cur * weight(n);
    if (!std::isfinite(term)) throw SeriesDivergenceError("gfunction: non-finite series term");
    sum += term;
    running_max = std::max(running_max, std::abs(term));
    small = std::abs(term) < 1e-16 * running_max ? small + 1 : 0;
    if (n > settle && small >= 10) return sum;
  }
  throw SeriesDivergenceError("gfunction: series tail did not decay within ncoef_max terms");
}

namespace {

struct Segment {
  double lo, hi;
};

std::vector<Segment> pole_free_segments(double xlo, double xmax, double omega, double radius) {
  std::vector<Segment> out;
  double lo = xlo;
  for (int n = 0;; ++n) {
    const double pole = n * omega;
    if (pole > xmax) break;
    if (pole - radius > lo) out.push_back({lo, pole - radius});
    lo = pole + radius;
  }
  if (xmax > lo) out.push_back({lo, xmax});
  return out;
}

// Parity of a block eigenvector under sx (-1)^n.
Spin block_parity(const Eigen::VectorXd& v, int ncut) {
  double p = 0.0;
  for (int n = 0; n <= ncut; ++n) p += (n % 2 ? -2.0 : 2.0) * v(n) * v(ncut + 1 + n);
  return p >= 0.0 ? Spin::plus : Spin::minus;
}

}  // namespace

GFunctionSpectrum gfunction_spectrum(double delta, double g, double omega, double xmax, int k,
                                     const GFunctionOptions& opts) {
  if (g == 0.0) throw std::invalid_argument("gfunction_spectrum: g must be nonzero");
  if (!(omega > 0.0)) throw std::invalid_argument("gfunction_spectrum: omega must be positive");
  if (k < 0) throw std::invalid_argument("gfunction_spectrum: k must be >= 0");

  GFunctionSpectrum out;
  const double offset = g * g / omega;
  std::vector<GFunctionRoot> found;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  if (delta == 0.0) {
    for (int n = 0; n * omega <= xmax && n < k; ++n)
      for (Spin s : {Spin::minus, Spin::plus})
        found.push_back({n * omega, n * omega - offset, s, nan, true});
  } else {
    const double radius = opts.pole_radius * omega;
    const double xlo = -std::abs(delta) - 2.0 * omega;
    const auto segments = pole_free_segments(xlo, xmax, omega, radius);

    for (Spin parity : {Spin::minus, Spin::plus}) {
      auto G = [&](double x) {
        try {
          return gfunction_eval(x, delta, g, omega, parity, opts);
        } catch (const std::exception&) {
          return nan;
        }
      };
      int count = 0;
      for (const auto& seg : segments) {
        if (count >= k) break;
        const int m = std::max(1, static_cast<int>(std::ceil((seg.hi - seg.lo) / (opts.grid_step * omega))));
        double x0 = seg.lo, v0 = G(x0);
        for (int i = 1; i <= m && count < k; ++i) {
          const double x1 = i == m ? seg.hi : seg.lo + (seg.hi - seg.lo) * i / m;
          const double v1 = G(x1);
          if (std::isnan(v0) || std::isnan(v1)) {
            out.skipped.emplace_back(x0, x1);
          } else if (v0 == 0.0 || std::signbit(v0) != std::signbit(v1)) {
            double lo = x0, hi = x1, vlo = v0;
            bool poisoned = false;
            while (hi - lo > opts.root_tol * omega && vlo != 0.0) {
              const double mid = 0.5 * (lo + hi);
              const double vm = G(mid);
              if (std::isnan(vm)) {
                poisoned = true;
                break;
              }
              if (vm == 0.0 || std::signbit(vm) != std::signbit(vlo)) {
                hi = mid;
              } else {
                lo = mid;
                vlo = vm;
              }
            }
            if (poisoned) {
              out.skipped.emplace_back(x0, x1);
            } else {
              const double root = vlo == 0.0 ? lo : 0.5 * (lo + hi);
              found.push_back({root, root - offset, parity, std::abs(G(root)), false});
              ++count;
            }
          }
          x0 = x1;
          v0 = v1;
        }
      }
    }

    // Levels on (or within the exclusion radius of) a pole come from diagonalization.
    const BlockParams bp{Block::a, 0.0, delta, 0.0, g, omega};
    const int levels = 2 * (static_cast<int>(std::ceil(std::max(xmax, 0.0) / omega)) + 2);
    const auto es = converge_block(bp, SolverOptions{}, levels);
    for (std::size_t i = 0; i < es.spectrum.energies.size(); ++i) {
      const double x = es.spectrum.energies[i] + offset;
      const double nearest = std::round(x / omega);
      if (nearest < 0.0 || x > xmax || std::abs(x - nearest * omega) >= radius) continue;
      found.push_back({x, es.spectrum.energies[i], block_parity(es.vectors.col(i), es.ncut), nan, true});
    }
  }

  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
  int per_parity[2] = {0, 0};
  for (const auto& r : found) {
    int& c = per_parity[r.parity == Spin::plus];
    if (c < k) {
      out.roots.push_back(r);
      ++c;
    }
  }
  return out;
}

}  // namespace rabi2q
