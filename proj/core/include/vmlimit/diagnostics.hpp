#pragma once

#include <vector>

#include "vmlimit/distribution.hpp"
#include "vmlimit/fields.hpp"
#include "vmlimit/history.hpp"
#include "vmlimit/kinematics.hpp"
#include "vmlimit/maxwell.hpp"

namespace vmlimit {

// Energy and momentum densities.
//   eps_tilde = sum_a int f p^2/(gamma+m) dp + (E1^2+E2^2+B^2)/8pi
//   mom_tilde = sum_a int f p1 p^2/(gamma(gamma+m)) dp + c E2 B/4pi
//   kpm(x)    = sum_a int f sigma_pm dp
// eps and mom add the rest-mass parts c^2 m int f dp and c^2 m int f V1 dp;
// at c = infinity those are infinite, so eps and mom then carry the tilde
// values (recorded, not summed with a fake rest term).
struct EnergyDiagnostics {
  std::vector<double> eps, mom, eps_tilde, mom_tilde, kplus, kminus;
  double total_eps = 0.0, total_eps_tilde = 0.0, total_mom_tilde = 0.0;
  double kplus_min = 0.0, kminus_min = 0.0;
  double kplus_max = 0.0, kminus_max = 0.0;
};

EnergyDiagnostics energy_fields(const DistributionField& f,
                                const FieldState& fields,
                                const MomentEngine& engine, SpeedOfLight c);

// Momentum support radius: max |p| over nodes where f exceeds the threshold
// or deviates from the background by more than it, over all species.
double support_radius(const DistributionField& f, double threshold);

// Spatial radius of the deviation from the background (outer edge of the
// outermost deviating cell).
double deviation_x_radius(const DistributionField& f, double threshold);

struct LambdaRegion {
  double d0 = 0.0;  // R0 + (1+T) sup_t (Q(t) + Qinf(t))
  double m0 = 1.0;  // min species mass
  bool contains(double t, double x) const;
};

struct LambdaSup {
  double value = 0.0;  // sup of |E1|+|E2|+|B| over stored points inside the region
  bool empty = true;   // region never intersected the stored grid
};

LambdaSup lambda_sup(const RunHistory& history, const LambdaRegion& region);

// Characteristic-triangle balance at an apex (t,x):
//   I   = c^-1 int_{x-ct}^{x+ct} eps_tilde(0,y) dy
//   II  = int_0^t (eps_tilde + c^-1 mom_tilde)(tau, x + c(t-tau)) dtau
//   III = int_0^t (eps_tilde - c^-1 mom_tilde)(tau, x - c(t-tau)) dtau
// Edge integrals use cubic interpolation in x and the trapezoid rule over
// the stored record times. edge_kplus / edge_kminus are the same edge
// integrals of kpm, which the identity bounds by I.
struct TriangleCheck {
  double I = 0.0, II = 0.0, III = 0.0, residual = 0.0;
  double edge_kplus = 0.0, edge_kminus = 0.0;
  bool clipped = false;  // cone or apex left the stored history; not certified
};

TriangleCheck triangle_residual(const RunHistory& history, double apex_t,
                                double apex_x, SpeedOfLight c);

// Pointwise check of |j2(x)| <= A + B kpm(x), with A and B assembled from
// the three-zone split of |V2| against sigma_pm (|p| below 1, between 1 and
// c, above c). The constants are recorded in the report; margins are the
// minima of rhs - lhs over the grid.
struct BridgeReport {
  double a_const = 0.0, b_const = 0.0;
  double margin_plus = 0.0, margin_minus = 0.0;
  bool pass = false;
};

BridgeReport j2_k_bridge_check(const std::vector<double>& j2,
                               const EnergyDiagnostics& energy,
                               const MomentEngine& engine,
                               const std::vector<double>& max_f0_per_species,
                               SpeedOfLight c);

// Sup-norm gaps between a finite-c state and the limit state on the same
// grid. e2_sup and b_sup are the running maxima recorded by the field
// update, since outgoing radiation leaves the grid.
struct ErrorNorms {
  std::vector<double> h_sup;  // per species sup |f - f_inf|
  double e1_gap = 0.0;
  double e2_sup = 0.0, b_sup = 0.0;
  double total_gap = 0.0;  // max_a h_sup + e1_gap + e2_sup + b_sup
};

ErrorNorms error_norms(const DistributionField& f_c, const FieldState& fields_c,
                       const DistributionField& f_limit,
                       const FieldState& fields_limit);

}  // namespace vmlimit
