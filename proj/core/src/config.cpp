#include "vmlimit/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "vmlimit/errors.hpp"

namespace vmlimit {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' wants a real number, got '" +
                      value + "'");
  }
}

long parse_int(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' wants an integer, got '" +
                      value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: key '" + key + "' wants true or false, got '" +
                    value + "'");
}

}  // namespace

double RunConfig::min_mass() const {
  double m = species.empty() ? 1.0 : species[0].mass;
  for (const auto& s : species) m = std::min(m, s.mass);
  return m;
}

void RunConfig::check() const {
  if (nx < 8 || np1 < 8 || np2 < 8)
    throw ConfigError("config: grid counts nx, np1, np2 must all be >= 8");
  if (!(t_final > 0.0)) throw ConfigError("config: t_final must be positive");
  if (!(x_max > 0.0)) throw ConfigError("config: x_max must be positive");
  if (!(p1_box() > 0.0) || !(p2_box() > 0.0))
    throw ConfigError("config: momentum box must be positive");
  if (!(dt_cap > 0.0)) throw ConfigError("config: dt_cap must be positive");
  if (!(cfl_fraction > 0.0) || cfl_fraction > 1.0)
    throw ConfigError("config: cfl_fraction must lie in (0, 1]");
  if (species.empty()) throw ConfigError("config: at least one species");
  for (size_t i = 0; i < species.size(); ++i)
    if (!(species[i].mass > 0.0))
      throw ConfigError("config: species " + std::to_string(i) +
                        " mass must be positive");
  if (snapshot_stride < 0 || diag_stride < 1)
    throw ConfigError("config: snapshot_stride >= 0 and diag_stride >= 1");
  if (!(support_threshold_rel > 0.0))
    throw ConfigError("config: support_threshold_rel must be positive");
}

PhaseSpaceGrid RunConfig::make_grid() const {
  PhaseSpaceGrid g =
      PhaseSpaceGrid::make(nx, np1, np2, x_max, p1_box(), p2_box());
  g.check_coverage(profile.r0, t_final, min_mass());
  return g;
}

RunConfig RunConfig::baseline() {
  RunConfig cfg;
  cfg.species = {{-1.0, 1.0, "negative"}, {+1.0, 2.0, "positive"}};
  cfg.profile.r0 = 1.0;
  cfg.profile.q0 = 2.0;
  cfg.profile.amplitude = 0.02;
  cfg.profile.pert_amp = 0.8;
  cfg.profile.pert_p2 = 0.1;
  cfg.profile.drift = 0.0;
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  cfg.species.clear();
  int section = -1;  // -1 = top level, else species index
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": unterminated section header");
      std::string name = trim(line.substr(1, line.size() - 2));
      if (name.rfind("species.", 0) != 0)
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": unknown section '" + name + "'");
      long idx = parse_int("species index", name.substr(8));
      if (idx != static_cast<long>(cfg.species.size()))
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": species sections must be numbered in order from 0");
      cfg.species.push_back({});
      section = static_cast<int>(idx);
      continue;
    }

    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");

    if (section >= 0) {
      SpeciesParams& sp = cfg.species[section];
      if (key == "charge") sp.charge = parse_real(key, value);
      else if (key == "mass") sp.mass = parse_real(key, value);
      else if (key == "label") sp.label = value;
      else
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": unknown species key '" + key + "'");
      continue;
    }

    if (key == "c") {
      try {
        cfg.c = SpeedOfLight::parse(value);
      } catch (const std::exception&) {
        throw ConfigError("config: key 'c' wants a positive real or inf, got '" +
                          value + "'");
      }
    }
    else if (key == "t_final") cfg.t_final = parse_real(key, value);
    else if (key == "nx") cfg.nx = static_cast<int>(parse_int(key, value));
    else if (key == "np1") cfg.np1 = static_cast<int>(parse_int(key, value));
    else if (key == "np2") cfg.np2 = static_cast<int>(parse_int(key, value));
    else if (key == "x_max") cfg.x_max = parse_real(key, value);
    else if (key == "p1_max") cfg.p1_max = parse_real(key, value);
    else if (key == "p2_max") cfg.p2_max = parse_real(key, value);
    else if (key == "momentum_margin") cfg.momentum_margin = parse_real(key, value);
    else if (key == "dt_cap") cfg.dt_cap = parse_real(key, value);
    else if (key == "cfl_fraction") cfg.cfl_fraction = parse_real(key, value);
    else if (key == "profile") cfg.profile.name = value;
    else if (key == "r0") cfg.profile.r0 = parse_real(key, value);
    else if (key == "q0") cfg.profile.q0 = parse_real(key, value);
    else if (key == "amplitude") cfg.profile.amplitude = parse_real(key, value);
    else if (key == "pert_amp") cfg.profile.pert_amp = parse_real(key, value);
    else if (key == "pert_p2") cfg.profile.pert_p2 = parse_real(key, value);
    else if (key == "drift") cfg.profile.drift = parse_real(key, value);
    else if (key == "e2_amp") cfg.profile.e2_amp = parse_real(key, value);
    else if (key == "b_amp") cfg.profile.b_amp = parse_real(key, value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "snapshot_stride")
      cfg.snapshot_stride = static_cast<int>(parse_int(key, value));
    else if (key == "diag_stride")
      cfg.diag_stride = static_cast<int>(parse_int(key, value));
    else if (key == "seed")
      cfg.seed = static_cast<unsigned long>(parse_int(key, value));
    else if (key == "support_threshold_rel")
      cfg.support_threshold_rel = parse_real(key, value);
    else if (key == "strict_invariants")
      cfg.strict_invariants = parse_bool(key, value);
    else
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
  }

  if (cfg.species.empty())
    throw ConfigError("config: no [species.N] sections found");
  cfg.check();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string render_config(const RunConfig& config) {
  std::ostringstream os;
  os.precision(17);
  os << "c = ";
  if (config.c.is_infinite()) os << "inf";
  else os << config.c.value();
  os << "\n";
  os << "t_final = " << config.t_final << "\n";
  os << "nx = " << config.nx << "\n";
  os << "np1 = " << config.np1 << "\n";
  os << "np2 = " << config.np2 << "\n";
  os << "x_max = " << config.x_max << "\n";
  if (config.p1_max > 0.0) os << "p1_max = " << config.p1_max << "\n";
  if (config.p2_max > 0.0) os << "p2_max = " << config.p2_max << "\n";
  os << "momentum_margin = " << config.momentum_margin << "\n";
  os << "dt_cap = " << config.dt_cap << "\n";
  os << "cfl_fraction = " << config.cfl_fraction << "\n";
  os << "profile = " << config.profile.name << "\n";
  os << "r0 = " << config.profile.r0 << "\n";
  os << "q0 = " << config.profile.q0 << "\n";
  os << "amplitude = " << config.profile.amplitude << "\n";
  os << "pert_amp = " << config.profile.pert_amp << "\n";
  os << "pert_p2 = " << config.profile.pert_p2 << "\n";
  os << "drift = " << config.profile.drift << "\n";
  os << "e2_amp = " << config.profile.e2_amp << "\n";
  os << "b_amp = " << config.profile.b_amp << "\n";
  if (!config.out_dir.empty()) os << "out_dir = " << config.out_dir << "\n";
  os << "snapshot_stride = " << config.snapshot_stride << "\n";
  os << "diag_stride = " << config.diag_stride << "\n";
  os << "seed = " << config.seed << "\n";
  os << "support_threshold_rel = " << config.support_threshold_rel << "\n";
  os << "strict_invariants = " << (config.strict_invariants ? "true" : "false")
     << "\n";
  for (size_t i = 0; i < config.species.size(); ++i) {
    os << "[species." << i << "]\n";
    os << "charge = " << config.species[i].charge << "\n";
    os << "mass = " << config.species[i].mass << "\n";
    if (!config.species[i].label.empty())
      os << "label = " << config.species[i].label << "\n";
  }
  return os.str();
}

}  // namespace vmlimit
