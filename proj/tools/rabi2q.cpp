// Command-line front end: spectrum | ground | scan | critical | validate | convergence
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rabi2q/cli.hpp"
#include "rabi2q/fock.hpp"

using namespace rabi2q;

namespace {

struct Overrides {
  std::string config;
  std::map<std::string, double> reals;
  std::optional<int> ncut;
  std::optional<int> nmax;
  std::optional<double> tol;
  std::string dump_matrix;
};

void add_common(CLI::App* sub, Overrides& ov, cli::RunConfig& cfg) {
  sub->add_option("--config", ov.config, "key=value parameter file")->check(CLI::ExistingFile);
  sub->add_option("--out", cfg.out, "output path (default stdout)");
  sub->add_option("--tol", ov.tol, "ground-energy convergence tolerance [omega]");
  sub->add_option("--ncut", ov.ncut, "fixed Fock truncation instead of the schedule");
  sub->add_option("--nmax", ov.nmax, "truncation cap of the schedule");
  sub->add_option("--dump-matrix", ov.dump_matrix, "write the full Hamiltonian (dense, row-major) to PATH");
  for (const char* key : {"eps1", "eps2", "omega", "gx", "gy", "gz", "g1", "g2", "wg1", "wg2", "weps1", "weps2", "wgx", "wgy"})
    sub->add_option_function<double>(std::string("--") + key, [&ov, key](double v) { ov.reals[key] = v; },
                                      std::string("override ") + key);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit Rabi model: spectra, ground states and phase transitions"};
  app.require_subcommand(1);
  cli::RunConfig cfg;
  Overrides ov;

  auto* spectrum = app.add_subcommand("spectrum", "lowest levels with block/backend provenance");
  auto* ground = app.add_subcommand("ground", "ground-state records of both blocks (JSON)");
  auto* scan = app.add_subcommand("scan", "phase scan along a line or over the (g, eps) plane");
  auto* critical = app.add_subcommand("critical", "refine a critical point by bisection");
  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  auto* convergence = app.add_subcommand("convergence", "E0 versus Fock truncation per block");
  for (auto* s : {spectrum, ground, scan, critical, validate, convergence}) add_common(s, ov, cfg);

  spectrum->add_option("--levels,-k", cfg.levels, "number of levels");
  for (auto* s : {spectrum, scan}) {
    s->add_option("--gmin", cfg.plane_range.gmin);
    s->add_option("--gmax", cfg.plane_range.gmax);
  }
  spectrum->add_option("--gsteps", cfg.plane_range.gsteps, "g-sweep points (enables the sweep)");
  scan->add_option("--gsteps", cfg.plane_range.gsteps);
  scan->add_option("--emin", cfg.plane_range.emin);
  scan->add_option("--emax", cfg.plane_range.emax);
  scan->add_option("--esteps", cfg.plane_range.esteps);
  scan->add_flag("--plane", cfg.plane, "scan the (g, eps) plane");
  scan->add_option("--critical", cfg.critical_out, "critical-line CSV path (plane scans)");
  std::string vary = "g";
  for (auto* s : {scan, critical}) {
    s->add_option("--vary", vary, "g | eps | gamma")->check(CLI::IsMember({"g", "eps", "gamma"}));
    s->add_option("--min", cfg.min);
    s->add_option("--max", cfg.max);
  }
  scan->add_option("--steps", cfg.steps, "points along the line");
  ground->add_flag("--amplitudes", cfg.amplitudes, "include the leading 20 Fock amplitudes per spin label");
  validate->add_flag("--inject-asymmetry", cfg.inject_asymmetry, "corrupt one matrix entry (self-test)");
  convergence->add_option("--nmin", cfg.conv_nmin);
  convergence->add_option("--nstep", cfg.conv_nstep);
  convergence->add_option("--nlast", cfg.conv_nmax, "largest truncation listed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!ov.config.empty()) cli::load_config_file(cfg, ov.config);
    std::map<std::string, std::string> kv;
    // Flag overrides go through the config parser at full precision.
    for (const auto& [k, v] : ov.reals) {
      std::ostringstream os;
      os.precision(17);
      os << v;
      kv[k] = os.str();
    }
    cli::apply_key_values(cfg, kv);
    if (ov.ncut) cfg.ncut = ov.ncut;
    if (ov.nmax) cfg.nmax = *ov.nmax;
    if (ov.tol) cfg.tol = *ov.tol;
    cfg.vary = axis_from_string(vary);
    cfg.g_sweep = spectrum->count("--gsteps") > 0 || spectrum->count("--gmin") > 0 || spectrum->count("--gmax") > 0;
    cfg.validate();

    if (!ov.dump_matrix.empty()) {
      std::ofstream dm(ov.dump_matrix);
      if (!dm) throw std::runtime_error("cannot write " + ov.dump_matrix);
      dump_matrix(dm, build_full(cfg.model, cfg.ncut.value_or(10)));
    }

    std::ofstream file;
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      if (!file) throw std::runtime_error("cannot write " + cfg.out);
    }
    std::ostream& out = cfg.out.empty() ? std::cout : file;

    if (*spectrum) return cli::cmd_spectrum(cfg, out, std::cerr);
    if (*ground) return cli::cmd_ground(cfg, out, std::cerr);
    if (*scan) return cli::cmd_scan(cfg, out, std::cerr);
    if (*critical) return cli::cmd_critical(cfg, out, std::cerr);
    if (*validate) return cli::cmd_validate(cfg, out, std::cerr);
    if (*convergence) return cli::cmd_convergence(cfg, out, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
