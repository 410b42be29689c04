#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "rabi2q/cli.hpp"

namespace rabi2q::cli {

void RunConfig::validate() const {
  model.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (ncut && *ncut < 1) throw std::invalid_argument("ncut must be >= 1");
  if (nmax < 1) throw std::invalid_argument("nmax must be >= 1");
  if (levels < 0) throw std::invalid_argument("levels must be >= 0");
  if (!(min <= max)) throw std::invalid_argument("empty range: min > max");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (!(plane_range.gmin <= plane_range.gmax) || !(plane_range.emin <= plane_range.emax))
    throw std::invalid_argument("empty plane range");
  if (plane_range.gsteps < 1 || plane_range.esteps < 1) throw std::invalid_argument("plane steps must be >= 1");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument("config: bad number for '" + key + "': " + v);
  return d;
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_key_values(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  const std::map<std::string, double*> reals = {
      {"eps1", &cfg.model.eps1},     {"eps2", &cfg.model.eps2},       {"omega", &cfg.model.omega},
      {"gx", &cfg.model.gx},         {"gy", &cfg.model.gy},           {"gz", &cfg.model.gz},
      {"g1", &cfg.model.g1},         {"g2", &cfg.model.g2},           {"tol", &cfg.tol},
      {"wg1", &cfg.weights.g1},      {"wg2", &cfg.weights.g2},        {"weps1", &cfg.weights.eps1},
      {"weps2", &cfg.weights.eps2},  {"wgx", &cfg.weights.gx},        {"wgy", &cfg.weights.gy},
  };
  for (const auto& [key, value] : kv) {
    if (auto it = reals.find(key); it != reals.end()) {
      *it->second = to_double(key, value);
    } else if (key == "ncut" || key == "nmax") {
      const double d = to_double(key, value);
      if (d != std::floor(d)) throw std::invalid_argument("config: '" + key + "' must be an integer");
      (key == "ncut" ? cfg.ncut.emplace() : cfg.nmax) = static_cast<int>(d);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  apply_key_values(cfg, parse_key_values(in));
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_header(std::ostream& os, const RunConfig& cfg, const std::string& command) {
  const auto& m = cfg.model;
  const auto& w = cfg.weights;
  os << "# " << kToolVersion << " " << command << '\n'
     << "# eps1=" << fmt(m.eps1) << " eps2=" << fmt(m.eps2) << " omega=" << fmt(m.omega) << " gx=" << fmt(m.gx)
     << " gy=" << fmt(m.gy) << " gz=" << fmt(m.gz) << " g1=" << fmt(m.g1) << " g2=" << fmt(m.g2) << '\n'
     << "# tol=" << fmt(cfg.tol) << " ncut=" << (cfg.ncut ? std::to_string(*cfg.ncut) : "auto")
     << " nmax=" << cfg.nmax << '\n'
     << "# wg1=" << fmt(w.g1) << " wg2=" << fmt(w.g2) << " weps1=" << fmt(w.eps1) << " weps2=" << fmt(w.eps2)
     << " wgx=" << fmt(w.gx) << " wgy=" << fmt(w.gy) << '\n';
}

void write_spectrum_csv(std::ostream& os, const std::vector<LevelEntry>& levels, std::optional<double> g, bool header) {
  if (header) os << (g ? "g," : "") << "block,level,energy,backend,ncut,converged\n";
  for (const auto& l : levels) {
    if (g) os << fmt(*g) << ',';
    os << to_string(l.block) << ',' << l.level << ',' << fmt(l.energy) << ',' << to_string(l.backend) << ',' << l.ncut
       << ',' << (l.converged ? "true" : "false") << '\n';
  }
}

void write_scan_csv(std::ostream& os, const std::vector<PhasePoint>& points) {
  os << "g,eps,e0a,e0b,dE,phase,mz,nphot,concurrence,flags\n";
  for (const auto& p : points)
    os << fmt(p.g) << ',' << fmt(p.eps) << ',' << fmt(p.e0a) << ',' << fmt(p.e0b) << ',' << fmt(p.dE) << ','
       << to_string(p.phase) << ',' << fmt(p.mz) << ',' << fmt(p.nphot) << ',' << fmt(p.concurrence) << ',' << p.flags
       << '\n';
}

void write_critical_line_csv(std::ostream& os, const std::vector<CriticalLinePoint>& line) {
  os << "eps,g_c,residual\n";
  for (const auto& c : line) os << fmt(c.eps) << ',' << fmt(c.g_c) << ',' << fmt(c.residual) << '\n';
}

namespace {

using nlohmann::ordered_json;

// Doubles go through fmt so that the JSON text is stable at 12 digits.
ordered_json num(double v) { return ordered_json::parse(std::isfinite(v) ? fmt(v) : "null"); }

ordered_json state_json(const GroundStateRecord& s, bool amplitudes) {
  ordered_json j;
  j["mz"] = num(s.mz);
  j["nphot"] = num(s.nphot);
  j["concurrence"] = num(s.concurrence);
  j["leakage"] = num(s.leakage);
  if (amplitudes) {
    ordered_json amps = ordered_json::object();
    for (int i = 0; i < 4; ++i) {
      const auto label = TwoQubitLabel::from_index(i);
      ordered_json row = ordered_json::array();
      for (int n = 0; n < std::min(20, s.ncut + 1); ++n) row.push_back(num(s.state.amplitude(label, n)));
      amps[to_string(label)] = row;
    }
    j["amplitudes"] = amps;
  }
  return j;
}

ordered_json record_json(const GroundRecord& r, bool amplitudes) {
  const auto& first = r.states.front();
  const auto o = ensemble_order_parameters(r);
  ordered_json j;
  j["block"] = to_string(first.block);
  j["energy"] = num(first.energy);
  j["mz"] = num(o.mz);
  j["nphot"] = num(o.nphot);
  j["concurrence"] = num(o.concurrence);
  j["ncut"] = first.ncut;
  j["degenerate"] = r.degenerate;
  j["backend"] = to_string(first.backend);
  ordered_json states = ordered_json::array();
  for (const auto& s : r.states) states.push_back(state_json(s, amplitudes));
  j["states"] = states;
  return j;
}

}  // namespace

std::string ground_json(const RunConfig& cfg, const GroundRecord& a, const GroundRecord& b, bool amplitudes) {
  const auto& m = cfg.model;
  const GroundRecord& winner = a.energy() <= b.energy() ? a : b;
  ordered_json j = record_json(winner, amplitudes);
  j["version"] = kToolVersion;
  j["params"] = {{"eps1", num(m.eps1)}, {"eps2", num(m.eps2)}, {"omega", num(m.omega)}, {"gx", num(m.gx)},
                 {"gy", num(m.gy)},     {"gz", num(m.gz)},     {"g1", num(m.g1)},       {"g2", num(m.g2)},
                 {"tol", num(cfg.tol)}};
  j["blocks"] = {{"a", record_json(a, amplitudes)}, {"b", record_json(b, amplitudes)}};
  return j.dump(2) + "\n";
}

}  // namespace rabi2q::cli
