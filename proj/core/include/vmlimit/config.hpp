#pragma once

#include <string>
#include <vector>

#include "vmlimit/grid.hpp"
#include "vmlimit/kinematics.hpp"
#include "vmlimit/profile.hpp"

namespace vmlimit {

// One run, fully described. Flat `key = value` text files with [species.N]
// sections map onto this; every key unknown to the parser is an error.
struct RunConfig {
  SpeedOfLight c = SpeedOfLight::finite(8.0);
  double t_final = 1.0;

  int nx = 128;
  int np1 = 64;
  int np2 = 64;
  double x_max = 8.0;
  double p1_max = 0.0;  // 0 = derive as q0 * (1 + momentum_margin)
  double p2_max = 0.0;
  double momentum_margin = 0.8;
  double dt_cap = 0.05;
  double cfl_fraction = 0.4;

  ProfileParams profile;
  std::vector<SpeciesParams> species;

  std::string out_dir;
  int snapshot_stride = 0;  // 0 = final snapshot only (when out_dir is set)
  int diag_stride = 1;      // history record every N steps
  unsigned long seed = 12345;
  double support_threshold_rel = 1e-12;
  bool strict_invariants = true;

  double p1_box() const {
    return p1_max > 0.0 ? p1_max : profile.q0 * (1.0 + momentum_margin);
  }
  double p2_box() const {
    return p2_max > 0.0 ? p2_max : profile.q0 * (1.0 + momentum_margin);
  }
  double min_mass() const;

  // Throws ConfigError on out-of-range values; grid geometry violations
  // surface when the grid is built.
  void check() const;
  PhaseSpaceGrid make_grid() const;

  // The reference setup every tolerance in the acceptance suite is stated
  // against: two species e = -1/+1 with masses 1 and 2, R0=1, Q0=2, X=8,
  // Nx=128, Np=64x64, T=1.
  static RunConfig baseline();
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);
std::string render_config(const RunConfig& config);

}  // namespace vmlimit
