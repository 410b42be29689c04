#include <fstream>
#include <ostream>
#include <sstream>

#include "rabi2q/cli.hpp"
#include "rabi2q/fock.hpp"

namespace rabi2q::cli {

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return v;
}

void warn_nonconverged(const std::vector<LevelEntry>& levels, std::ostream& err, bool& failed) {
  for (const auto& l : levels)
    if (!l.converged) {
      err << "error: block " << to_string(l.block) << " did not converge within nmax\n";
      failed = true;
      return;
    }
}

}  // namespace

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto opts = cfg.solver();
  bool failed = false;
  std::ostringstream body;
  if (!cfg.g_sweep) {
    const auto levels = four_series_spectrum(cfg.model, cfg.levels, opts);
    warn_nonconverged(levels, err, failed);
    write_spectrum_csv(body, levels);
  } else {
    const auto t = cfg.scan_template();
    const auto& r = cfg.plane_range;
    bool header = true;
    for (double g : linspace(r.gmin, r.gmax, r.gsteps)) {
      const auto levels = four_series_spectrum(t.at(Axis::g, g), cfg.levels, opts);
      warn_nonconverged(levels, err, failed);
      write_spectrum_csv(body, levels, g, header);
      header = false;
    }
    if (header) write_spectrum_csv(body, {}, 0.0, true);
  }
  if (failed) return 1;
  write_header(out, cfg, "spectrum");
  out << body.str();
  return 0;
}

int cmd_ground(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto [a, b] = reduce_params(cfg.model);
  const auto ra = ground_record(a, cfg.solver());
  const auto rb = ground_record(b, cfg.solver());
  for (const auto* r : {&ra, &rb})
    for (const auto& s : r->states)
      if (s.leakage > 1e-8)
        err << "warning: block " << to_string(s.block) << " ground state leaks " << s.leakage
            << " weight into the top Fock state\n";
  out << ground_json(cfg, ra, rb, cfg.amplitudes);
  return 0;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto t = cfg.scan_template();
  const auto opts = cfg.solver();
  write_header(out, cfg, "scan");
  if (!cfg.plane) {
    if (!(cfg.min < cfg.max)) {
      err << "error: scan needs --min < --max\n";
      return 2;
    }
    const double step = cfg.steps > 1 ? (cfg.max - cfg.min) / (cfg.steps - 1) : cfg.max - cfg.min;
    out << "# vary=" << to_string(cfg.vary) << " min=" << fmt(cfg.min) << " max=" << fmt(cfg.max)
        << " steps=" << cfg.steps << '\n';
    write_scan_csv(out, scan_line(t, cfg.vary, cfg.min, cfg.max, step, opts));
    return 0;
  }
  const auto& r = cfg.plane_range;
  out << "# plane g=[" << fmt(r.gmin) << "," << fmt(r.gmax) << "]x" << r.gsteps << " eps=[" << fmt(r.emin) << ","
      << fmt(r.emax) << "]x" << r.esteps << '\n';
  const auto grid = scan_plane(t, r, opts);
  write_scan_csv(out, grid.points);
  if (!cfg.critical_out.empty()) {
    std::ofstream line(cfg.critical_out);
    if (!line) {
      err << "error: cannot write " << cfg.critical_out << '\n';
      return 1;
    }
    write_header(line, cfg, "scan critical-line");
    write_critical_line_csv(line, extract_critical_line(grid, t, opts));
  }
  return 0;
}

int cmd_critical(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto cp = refine_critical(cfg.scan_template(), cfg.vary, cfg.min, cfg.max, cfg.solver());
    out << to_string(cp.vary) << "_c=" << fmt(cp.value) << " bracket=[" << fmt(cp.lo) << "," << fmt(cp.hi)
        << "] residual=" << fmt(cp.residual) << '\n';
    return 0;
  } catch (const InvalidBracketError& e) {
    err << "error: " << e.what() << " (no crossing)\n";
    return 1;
  }
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  bool all = true;
  for (const auto& c : run_validation(cfg)) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    all = all && c.passed;
  }
  out << (all ? "all checks passed" : "some checks FAILED") << '\n';
  return all ? 0 : 1;
}

int cmd_convergence(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.conv_nmin < 1 || cfg.conv_nstep < 1 || cfg.conv_nmax < cfg.conv_nmin) {
    err << "error: convergence needs 1 <= nmin <= nmax and nstep >= 1\n";
    return 2;
  }
  const auto [a, b] = reduce_params(cfg.model);
  write_header(out, cfg, "convergence");
  out << "block,ncut,e0\n";
  for (const auto& bp : {a, b})
    for (int n = cfg.conv_nmin; n <= cfg.conv_nmax; n += cfg.conv_nstep)
      out << to_string(bp.block) << ',' << n << ',' << fmt(eigensolve(build_block(bp, n), 1).energies.front()) << '\n';
  return 0;
}

}  // namespace rabi2q::cli
