#include "vmlimit/tables.hpp"

#include <cmath>

namespace vmlimit {

KinematicsTable KinematicsTable::build(const PhaseSpaceGrid& grid,
                                       const SpeciesParams& sp,
                                       SpeedOfLight c) {
  KinematicsTable t;
  t.species = sp;
  t.c = c;
  size_t n = static_cast<size_t>(grid.plane());
  t.v1.resize(n);
  t.v2.resize(n);
  t.kin.resize(n);
  t.mom1.resize(n);
  t.sig_plus.resize(n);
  t.sig_minus.resize(n);
  t.sig_floor.resize(n);
  t.quad_w.resize(n);
  for (int j1 = 0; j1 < grid.np1; ++j1) {
    double w1 = (j1 == 0 || j1 == grid.np1 - 1) ? 0.5 * grid.dp1 : grid.dp1;
    for (int j2 = 0; j2 < grid.np2; ++j2) {
      double w2 = (j2 == 0 || j2 == grid.np2 - 1) ? 0.5 * grid.dp2 : grid.dp2;
      size_t k = static_cast<size_t>(j1) * grid.np2 + j2;
      Vec2 p{grid.p1_node(j1), grid.p2_node(j2)};
      kinematics::KinematicSample s = kinematics::sample(p, sp, c);
      t.v1[k] = s.v[0];
      t.v2[k] = s.v[1];
      t.kin[k] = kinematics::kinetic_energy(p, sp, c);
      t.mom1[k] = kinematics::momentum_energy(p, sp, c);
      t.sig_plus[k] = s.sigma_plus;
      t.sig_minus[k] = s.sigma_minus;
      t.sig_floor[k] = kinematics::sigma_pm_lower_bound(p, sp, c);
      t.quad_w[k] = w1 * w2;
      if (std::abs(s.v[0]) > t.max_abs_v1) t.max_abs_v1 = std::abs(s.v[0]);
    }
  }
  return t;
}

}  // namespace vmlimit
