#pragma once

#include <cstdint>
#include <vector>

#include "vmlimit/distribution.hpp"
#include "vmlimit/fields.hpp"
#include "vmlimit/history.hpp"
#include "vmlimit/kinematics.hpp"
#include "vmlimit/maxwell.hpp"
#include "vmlimit/tables.hpp"

namespace vmlimit {

// Reused work arrays so the stepper performs no per-step allocation.
struct ScratchBuffers {
  std::vector<double> line_in, line_out, line_lo, line_hi;
  std::vector<double> plane_in, plane_out, plane_lo, plane_hi;
};

struct SimulationState {
  DistributionField f;
  FieldState fields;
  SourceMoments moments;
  double time = 0.0;
  std::int64_t step = 0;
};

// Semi-Lagrangian x-transport by dt: every (p1,p2) line is replaced by its
// backward-traced septic interpolant at x - V1 dt. Ghost cells are pinned
// to the background; negative interpolants are floored at zero and each
// interior line sum is rescaled to its pre-step value, so interior mass is
// conserved and the distribution stays nonnegative. Beyond the domain the
// line continues as the background value. Throws CflError when |V1| dt
// exceeds (nghost-1) dx.
void advect_x(DistributionField& f, const std::vector<KinematicsTable>& tables,
              double dt, ScratchBuffers& scratch);

// Momentum kick by dt under frozen fields. Finite c: per cell, one backward
// midpoint (RK2) characteristic step of
//   dp1/ds = e (E1 + c^-1 V2 B),  dp2/ds = e (E2 - c^-1 V1 B)
// and a clamped 4x4 cubic gather at the foot, with the cell's momentum-plane
// sum restored. Infinite c: the force is momentum-independent, so each p1
// line shifts rigidly by -e E1 dt (p2 untouched). Ghost x-bands are left on
// the background. Throws CflError when a foot leaves the (nghost-1)-spacing
// guard and SolverError on NaN fields.
void kick_p(DistributionField& f, const FieldState& fields,
            const std::vector<KinematicsTable>& tables, SpeedOfLight c,
            double dt, ScratchBuffers& scratch);

// Foot of the backward midpoint (RK2) characteristic step used by kick_p,
// under frozen fields: third-order local error in dt against the exact
// momentum characteristic.
Vec2 kick_foot(Vec2 p, double e1, double e2, double b,
               const SpeciesParams& sp, SpeedOfLight c, double dt);

// One Strang step of the relativistic system:
//   (A) advect_x dt/2
//   (B) moments rho, j
//   (C) transverse ray update with the stage-(B) j2; E1 = gauss integral
//   (D) kick_p dt with the stage-(C) fields
//   (E) advect_x dt/2
// then moments and E1 are refreshed from the exit state so the recorded
// state satisfies the Gauss law.
void step_rvm(SimulationState& state, const MomentEngine& engine,
              SpeedOfLight c, double dt, double tol_neutral,
              ScratchBuffers& scratch);

// Same splitting for the c = infinity limit system: V = p/m, E1 only, no
// transverse fields.
void step_vp(SimulationState& state, const MomentEngine& engine, double dt,
             double tol_neutral, ScratchBuffers& scratch);

struct CharacteristicTrace {
  int species = 0;
  std::vector<double> t, x, p1, p2;
  bool truncated = false;  // left the stored spatial domain at some point
};

// RK4 integration of one characteristic through the recorded field history,
// from t_start to t_end (either direction), with steps_per_record substeps
// between consecutive records.
CharacteristicTrace trace_characteristic(const RunHistory& history,
                                         const SpeciesParams& species,
                                         SpeedOfLight c, double t_start,
                                         double t_end, double x0, Vec2 p0,
                                         int steps_per_record = 4);

}  // namespace vmlimit
