#include "rabi2q/phase_scan.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "rabi2q/observables.hpp"

namespace rabi2q {

std::string to_string(Axis a) {
  switch (a) {
    case Axis::g: return "g";
    case Axis::eps: return "eps";
    case Axis::gamma: return "gamma";
  }
  return "?";
}

Axis axis_from_string(const std::string& s) {
  if (s == "g") return Axis::g;
  if (s == "eps") return Axis::eps;
  if (s == "gamma") return Axis::gamma;
  throw std::invalid_argument("unknown scan axis '" + s + "' (expected g, eps or gamma)");
}

std::string to_string(Phase p) {
  switch (p) {
    case Phase::A: return "A";
    case Phase::B: return "B";
    case Phase::critical: return "critical";
  }
  return "?";
}

ModelParams ScanTemplate::with(ModelParams p, Axis axis, double value) const {
  switch (axis) {
    case Axis::g:
      p.g1 = weights.g1 * value;
      p.g2 = weights.g2 * value;
      break;
    case Axis::eps:
      p.eps1 = weights.eps1 * value;
      p.eps2 = weights.eps2 * value;
      break;
    case Axis::gamma:
      p.gx = weights.gx * value;
      p.gy = weights.gy * value;
      break;
  }
  return p;
}

double ScanTemplate::coordinate(const ModelParams& p, Axis axis) const {
  auto project = [](double x1, double x2, double w1, double w2) {
    const double ww = w1 * w1 + w2 * w2;
    return ww > 0.0 ? (x1 * w1 + x2 * w2) / ww : 0.0;
  };
  switch (axis) {
    case Axis::g: return project(p.g1, p.g2, weights.g1, weights.g2);
    case Axis::eps: return project(p.eps1, p.eps2, weights.eps1, weights.eps2);
    case Axis::gamma: return project(p.gx, p.gy, weights.gx, weights.gy);
  }
  return 0.0;
}

namespace {

// Runs fn(i) for i in [0, n) on a few threads; results are written by index.
template <typename Fn>
void parallel_for(std::size_t n, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void add_flag(std::string& flags, const char* f) {
  if (!flags.empty()) flags += '|';
  flags += f;
}

std::vector<double> grid(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return out;
}

}  // namespace

double energy_difference(const ModelParams& p, const SolverOptions& opts) {
  const auto [a, b] = reduce_params(p);
  return block_ground_energy(a, opts).energy - block_ground_energy(b, opts).energy;
}

PhasePoint evaluate_point(const ScanTemplate& t, const ModelParams& p, const SolverOptions& opts) {
  PhasePoint pt;
  pt.g = t.coordinate(p, Axis::g);
  pt.eps = t.coordinate(p, Axis::eps);
  const auto [a, b] = reduce_params(p);
  const auto ea = block_ground_energy(a, opts);
  const auto eb = block_ground_energy(b, opts);
  pt.e0a = ea.energy;
  pt.e0b = eb.energy;
  pt.dE = ea.energy - eb.energy;
  if (!ea.converged || !eb.converged) add_flag(pt.flags, "nonconverged");

  if (std::abs(pt.dE) < kTieTolerance) {
    pt.phase = Phase::critical;
    add_flag(pt.flags, "critical");
  } else {
    pt.phase = pt.dE < 0.0 ? Phase::A : Phase::B;
  }

  try {
    const auto rec = ground_record(pt.phase == Phase::B ? b : a, opts);
    if (rec.degenerate) add_flag(pt.flags, "degenerate");
    const auto o = ensemble_order_parameters(rec);
    pt.mz = o.mz;
    pt.nphot = o.nphot;
    pt.concurrence = o.concurrence;
  } catch (const ConvergenceError&) {
    if (pt.flags.find("nonconverged") == std::string::npos) add_flag(pt.flags, "nonconverged");
    pt.mz = pt.nphot = pt.concurrence = std::numeric_limits<double>::quiet_NaN();
  }
  return pt;
}

std::vector<PhasePoint> scan_line(const ScanTemplate& t, Axis vary, double lo, double hi, double step,
                                  const SolverOptions& opts) {
  if (!(lo < hi)) throw std::invalid_argument("scan_line: require lo < hi");
  if (!(step > 0.0)) throw std::invalid_argument("scan_line: require step > 0");
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<PhasePoint> out(count);
  parallel_for(count, [&](std::size_t i) { out[i] = evaluate_point(t, t.at(vary, lo + step * i), opts); });
  return out;
}

CriticalPoint refine_critical(const ScanTemplate& t, Axis vary, double lo, double hi, const SolverOptions& opts) {
  auto f = [&](double v) { return energy_difference(t.at(vary, v), opts); };
  CriticalPoint cp{t.base, vary, lo, lo, hi, 0.0};
  double flo = f(lo), fhi = f(hi);
  if (std::abs(flo) < kCriticalTolerance) {
    cp.value = lo;
    cp.residual = std::abs(flo);
    return cp;
  }
  if (std::abs(fhi) < kCriticalTolerance) {
    cp.value = hi;
    cp.residual = std::abs(fhi);
    return cp;
  }
  if (std::signbit(flo) == std::signbit(fhi))
    throw InvalidBracketError("refine_critical: dE has the same sign at both ends of [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
  double mid = 0.5 * (lo + hi), fm = f(mid);
  for (int it = 0; it < 200 && std::abs(fm) >= kCriticalTolerance; ++it) {
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) break;
    mid = 0.5 * (lo + hi);
    fm = f(mid);
  }
  cp.value = mid;
  cp.lo = lo;
  cp.hi = hi;
  cp.residual = std::abs(fm);
  return cp;
}

PhaseGrid scan_plane(const ScanTemplate& t, const PlaneRange& r, const SolverOptions& opts) {
  if (r.gsteps < 1 || r.esteps < 1) throw std::invalid_argument("scan_plane: steps must be >= 1");
  if (!(r.gmin <= r.gmax) || !(r.emin <= r.emax)) throw std::invalid_argument("scan_plane: empty range");
  PhaseGrid grid_out;
  grid_out.g_values = grid(r.gmin, r.gmax, r.gsteps);
  grid_out.eps_values = grid(r.emin, r.emax, r.esteps);
  grid_out.points.resize(grid_out.g_values.size() * grid_out.eps_values.size());
  const std::size_t ng = grid_out.g_values.size();
  parallel_for(grid_out.points.size(), [&](std::size_t i) {
    grid_out.points[i] = evaluate_point(t, t.at(grid_out.g_values[i % ng], grid_out.eps_values[i / ng]), opts);
  });
  return grid_out;
}

std::vector<CriticalLinePoint> extract_critical_line(const PhaseGrid& grid_in, const ScanTemplate& t,
                                                     const SolverOptions& opts) {
  std::vector<CriticalLinePoint> out;
  const std::size_t ng = grid_in.g_values.size();
  for (std::size_t ie = 0; ie < grid_in.eps_values.size(); ++ie) {
    const double eps = grid_in.eps_values[ie];
    for (std::size_t ig = 0; ig + 1 < ng; ++ig) {
      const auto& p0 = grid_in.at(ig, ie);
      const auto& p1 = grid_in.at(ig + 1, ie);
      if (std::isnan(p0.dE) || std::isnan(p1.dE)) continue;
      double gc;
      if (p0.dE == 0.0) {
        gc = grid_in.g_values[ig];
      } else if (p1.dE != 0.0 && std::signbit(p0.dE) != std::signbit(p1.dE)) {
        const double g0 = grid_in.g_values[ig], g1 = grid_in.g_values[ig + 1];
        gc = g0 - p0.dE * (g1 - g0) / (p1.dE - p0.dE);
      } else {
        continue;
      }
      out.push_back({eps, gc, std::abs(energy_difference(t.at(gc, eps), opts))});
    }
    if (ng > 0 && grid_in.at(ng - 1, ie).dE == 0.0)
      out.push_back({eps, grid_in.g_values[ng - 1], 0.0});
  }
  return out;
}

}  // namespace rabi2q
