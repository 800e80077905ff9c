#pragma once

#include <vector>

#include "vmlimit/grid.hpp"
#include "vmlimit/kinematics.hpp"

namespace vmlimit {

// Node-wise kinematic quantities for one species on the momentum grid,
// plus the trapezoid quadrature weights. Index k = j1*np2 + j2, matching
// the p2-fastest layout of the distribution planes.
struct KinematicsTable {
  SpeciesParams species;
  SpeedOfLight c;
  std::vector<double> v1, v2;          // velocity components
  std::vector<double> kin;             // c^2 (gamma - m), kinetic weight
  std::vector<double> mom1;            // c^2 (p1 - m V1), momentum weight
  std::vector<double> sig_plus, sig_minus;
  std::vector<double> sig_floor;       // p^2 (m^2 + c^-2 p2^2) / (4 gamma^3)
  std::vector<double> quad_w;          // trapezoid weight dw1*dw2 per node
  double max_abs_v1 = 0.0;

  static KinematicsTable build(const PhaseSpaceGrid& grid,
                               const SpeciesParams& sp, SpeedOfLight c);
};

}  // namespace vmlimit
