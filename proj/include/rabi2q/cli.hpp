#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rabi2q/model.hpp"
#include "rabi2q/observables.hpp"
#include "rabi2q/phase_scan.hpp"
#include "rabi2q/spectrum.hpp"

namespace rabi2q::cli {

inline constexpr const char* kToolVersion = "rabi2q 0.1.0";

struct RunConfig {
  ModelParams model;
  AxisWeights weights;
  std::optional<int> ncut;
  double tol = 1e-8;
  int nmax = 600;
  std::string out;  // empty: stdout

  // spectrum
  int levels = 4;
  bool g_sweep = false;
  // line scans, critical brackets
  Axis vary = Axis::g;
  double min = 0.0;
  double max = 1.2;
  int steps = 121;
  // plane scans
  bool plane = false;
  PlaneRange plane_range;
  std::string critical_out;
  // ground
  bool amplitudes = false;
  // convergence
  int conv_nmin = 10;
  int conv_nstep = 10;
  int conv_nmax = 200;
  // validate
  bool inject_asymmetry = false;

  SolverOptions solver() const { return {tol, nmax, ncut}; }
  ScanTemplate scan_template() const { return {model, weights}; }
  void validate() const;
};

/// key=value lines, '#' comments. Keys: eps1 eps2 omega gx gy gz g1 g2 ncut tol
/// nmax and the axis weights wg1 wg2 weps1 weps2 wgx wgy.
std::map<std::string, std::string> parse_key_values(std::istream& in);
void apply_key_values(RunConfig& cfg, const std::map<std::string, std::string>& kv);
void load_config_file(RunConfig& cfg, const std::string& path);

/// 12 significant digits, '.' decimal point.
std::string fmt(double v);

/// '#' comment lines with the tool version and every resolved parameter.
void write_header(std::ostream& os, const RunConfig& cfg, const std::string& command);

void write_spectrum_csv(std::ostream& os, const std::vector<LevelEntry>& levels, std::optional<double> g = std::nullopt,
                        bool header = true);
void write_scan_csv(std::ostream& os, const std::vector<PhasePoint>& points);
void write_critical_line_csv(std::ostream& os, const std::vector<CriticalLinePoint>& line);
std::string ground_json(const RunConfig& cfg, const GroundRecord& a, const GroundRecord& b, bool amplitudes);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The invariant suite behind `validate`.
std::vector<CheckResult> run_validation(const RunConfig& cfg);

// Subcommands write their primary output to `out` and diagnostics to `err`;
// the return value is the process exit code.
int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_ground(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_critical(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_convergence(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace rabi2q::cli
