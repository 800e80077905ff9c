#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vmlimit/distribution.hpp"
#include "vmlimit/fields.hpp"
#include "vmlimit/grid.hpp"
#include "vmlimit/kinematics.hpp"
#include "vmlimit/maxwell.hpp"

namespace vmlimit {

struct ValidationItem {
  std::string name;
  bool pass = false;
  double value = 0.0;  // measured residual or quantity
  double limit = 0.0;  // tolerance it was compared against
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  bool all_pass() const;
  std::string summary() const;  // one line per item
};

struct InitialData {
  DistributionField f;
  FieldState fields;
  SourceMoments moments;
  double charge_scale = 0.0;          // sum |rho0| dx, the neutrality yardstick
  double projection_strength = 0.0;   // amplitude removed to kill residual charge
  double max_f0 = 0.0;                // global max of the initial distribution
};

// Default neutrality tolerance for a grid: 1e-10 per cell of accumulated
// round-off headroom.
double default_tol_neutral(const PhaseSpaceGrid& grid);

// Two-sided Gauss integral
//   E1(x) = 2 pi int_{-inf}^{x} rho - 2 pi int_{x}^{inf} rho
// with midpoint cell quadrature anchored at cell centers, so a piecewise
// constant rho reproduces its exact piecewise-linear field. Cells outside
// the support band of rho get exactly 0. Throws NeutralityError when
// |int rho dx| exceeds tol_neutral.
std::vector<double> gauss_e1(const std::vector<double>& rho, double dx,
                             double tol_neutral);

// Builds the distribution from the profile, projects out the residual
// discrete charge (uniform in shape over the species-0 perturbation
// support), computes moments and the compatible E1. E2 and B start from
// the profile's closed forms (zero for the acceptance configurations).
InitialData build_initial_data(const PhaseSpaceGrid& grid,
                               std::shared_ptr<const BackgroundProfile> profile,
                               const MomentEngine& engine, double tol_neutral);

// Checks the structural assumptions on the built data: background momentum
// support inside Q0, background neutrality, background current cancellation,
// perturbation confined to |x| <= R0, zero total perturbed charge, discrete
// Gauss compatibility of E1, and E1 = 0 outside the support.
ValidationReport validate_initial_data(const InitialData& data,
                                       const PhaseSpaceGrid& grid,
                                       const MomentEngine& engine,
                                       double tol_neutral);

}  // namespace vmlimit
