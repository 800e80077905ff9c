#pragma once

#include <vector>

#include "vmlimit/distribution.hpp"
#include "vmlimit/fields.hpp"
#include "vmlimit/grid.hpp"
#include "vmlimit/kinematics.hpp"
#include "vmlimit/tables.hpp"

namespace vmlimit {

// Velocity moments of the distribution. The x-uniform background moments
// are computed once with the identical summation order and subtracted per
// cell, so rho, j1, j2 are exactly zero wherever f still equals the
// background bit for bit. The analytic background charge and the in-plane
// currents vanish for the built-in profiles; only their round-off residue
// is removed here.
struct MomentEngine {
  PhaseSpaceGrid grid;
  std::vector<KinematicsTable> tables;
  double rho_bg = 0.0, j1_bg = 0.0, j2_bg = 0.0;

  static MomentEngine build(const PhaseSpaceGrid& grid,
                            const BackgroundProfile& profile, SpeedOfLight c);
  void compute(const DistributionField& f, SourceMoments& out) const;
};

// Advances E2 +- B one step along their characteristics:
//   G+(t+dt, x) = G+(t, x - c dt) - 4 pi dt j2(t + dt/2, x - c dt/2)
//   G-(t+dt, x) = G-(t, x + c dt) - 4 pi dt j2(t + dt/2, x + c dt/2)
// with zero inflow beyond the domain. The shift is exact transport at any
// c dt / dx, so no c-scaled time-step restriction exists. j2_stage holds
// the mid-step current on cell centers.
void update_transverse(FieldState& fields, const std::vector<double>& j2_stage,
                       const PhaseSpaceGrid& grid, SpeedOfLight c, double dt);

// E1 from the two-sided Gauss integral of rho; see gauss_e1 in initial_data.
std::vector<double> update_e1(const SourceMoments& moments,
                              const PhaseSpaceGrid& grid, double tol_neutral);

// Max over interior times and all x of |centered-dt E1 + 4 pi j1|. The
// Gauss route never integrates the Ampere law, so this residual measures
// discrete charge continuity. Needs at least 3 stored levels.
double ampere_residual(const std::vector<std::vector<double>>& e1_series,
                       const std::vector<std::vector<double>>& j1_series,
                       double dt);

}  // namespace vmlimit
