#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rabi2q/model.hpp"
#include "rabi2q/spectrum.hpp"

namespace rabi2q {

enum class Axis { g, eps, gamma };
std::string to_string(Axis a);
Axis axis_from_string(const std::string& s);

/// How one scalar scan coordinate spreads over the two physical parameters of
/// its pair: g1 = w_g1 g, g2 = w_g2 g; eps1 = w_eps1 eps, ...; gx = w_gx gamma, ...
/// The defaults (1/2, 1/2) give g_a = g, eps_a = eps and gamma_b = gamma.
struct AxisWeights {
  double g1 = 0.5, g2 = 0.5;
  double eps1 = 0.5, eps2 = 0.5;
  double gx = 0.5, gy = 0.5;
};

struct ScanTemplate {
  ModelParams base;
  AxisWeights weights;

  ModelParams at(Axis axis, double value) const { return with(base, axis, value); }
  ModelParams at(double g, double eps) const { return with(with(base, Axis::g, g), Axis::eps, eps); }
  ModelParams with(ModelParams p, Axis axis, double value) const;
  /// Least-squares projection of a parameter pair onto the axis weights.
  double coordinate(const ModelParams& p, Axis axis) const;
};

enum class Phase { A, B, critical };
std::string to_string(Phase p);

inline constexpr double kTieTolerance = 1e-10;
inline constexpr double kCriticalTolerance = 1e-8;

struct PhasePoint {
  double g = 0.0;
  double eps = 0.0;
  double e0a = 0.0;
  double e0b = 0.0;
  double dE = 0.0;
  Phase phase = Phase::critical;
  double mz = 0.0;
  double nphot = 0.0;
  double concurrence = 0.0;
  std::string flags;  // '|' separated: nonconverged, degenerate, critical
};

struct CriticalPoint {
  ModelParams fixed;
  Axis vary = Axis::g;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double residual = 0.0;
};

class InvalidBracketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ground energies of both blocks, their difference and the order parameters
/// of the global ground level.
PhasePoint evaluate_point(const ScanTemplate& t, const ModelParams& p, const SolverOptions& opts = {});

/// dE = E0(a) - E0(b) at the given parameters.
double energy_difference(const ModelParams& p, const SolverOptions& opts = {});

std::vector<PhasePoint> scan_line(const ScanTemplate& t, Axis vary, double lo, double hi, double step,
                                  const SolverOptions& opts = {});

/// Bisection on dE until |dE| < 1e-8 omega. Throws InvalidBracketError when dE
/// has the same sign at both ends.
CriticalPoint refine_critical(const ScanTemplate& t, Axis vary, double lo, double hi, const SolverOptions& opts = {});

struct PhaseGrid {
  std::vector<double> g_values;
  std::vector<double> eps_values;
  std::vector<PhasePoint> points;  // eps-major: points[ie * g_values.size() + ig]

  const PhasePoint& at(std::size_t ig, std::size_t ie) const { return points[ie * g_values.size() + ig]; }
};

struct PlaneRange {
  double gmin = 0.0, gmax = 1.2;
  int gsteps = 201;
  double emin = 0.0, emax = 0.8;
  int esteps = 201;
};

PhaseGrid scan_plane(const ScanTemplate& t, const PlaneRange& r, const SolverOptions& opts = {});

struct CriticalLinePoint {
  double eps = 0.0;
  double g_c = 0.0;
  double residual = 0.0;
};

/// Zero-level set of dE along g for every eps row, by linear interpolation
/// between neighbouring points of opposite sign. residual = |dE| at g_c.
std::vector<CriticalLinePoint> extract_critical_line(const PhaseGrid& grid, const ScanTemplate& t,
                                                     const SolverOptions& opts = {});

}  // namespace rabi2q
