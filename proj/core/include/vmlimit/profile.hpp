#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vmlimit/grid.hpp"
#include "vmlimit/kinematics.hpp"

namespace vmlimit {

// Parameters of a named initial-data family.  All lengths in units of the
// spatial grid, all momenta in units of the momentum grid.
struct ProfileParams {
  std::string name = "neutral-two-species";
  double r0 = 1.0;          // spatial support radius of perturbations and transverse fields
  double q0 = 2.0;          // momentum support radius of the background and of f0
  double amplitude = 0.02;  // peak of the background bump
  double pert_amp = 0.4;    // relative density perturbation on species 0
  double pert_p2 = 0.0;     // odd-in-p2 perturbation on species 0 (drives a transverse current)
  double drift = 0.0;       // p2 drift of the species-0 background; species 1 compensates
  double e2_amp = 0.0;      // initial transverse electric pulse (must be 0 for limit comparisons)
  double b_amp = 0.0;       // initial magnetic pulse
};

// Spatially homogeneous background F^a(p) plus the perturbed initial state
// supported in |x| < r0.  Holds closed forms and the per-species
// momentum-grid tables the solver samples from.
//
// The two-species neutral family, with species charges e0, e1 of opposite
// sign and masses m0, m1, writing u = x/r0:
//
//   b(p)   = max(0, 1 - |p|^2/q0^2)^3
//   w(x)   = max(0, 1 - u^2)^3
//   F^0    = A  b(p) (1 + beta0 p2/q0)
//   F^1    = A' b(p) (1 + beta1 p2/q0),  A' = A |e0|/|e1|, beta1 = beta0 m1/m0
//   f0^0   = F^0 (1 + d0 u w(x)) + dp2 A w(x) b(p) p2/q0
//   f0^1   = F^1
//
// Only species 0 is perturbed.  The odd factor u w integrates to zero, so
// the state stays globally neutral while the local charge density is first
// order in d0.  beta1 cancels the background transverse current of species
// 0 in the nonrelativistic moment, so the net current of F alone is
// O(1/c^2).  The dp2 term is charge-free at every x but carries an O(1)
// transverse current.
class BackgroundProfile {
 public:
  static BackgroundProfile build(const ProfileParams& params,
                                 const std::vector<SpeciesParams>& species,
                                 const PhaseSpaceGrid& grid);

  const ProfileParams& params() const { return params_; }
  const std::vector<SpeciesParams>& species() const { return species_; }
  int n_species() const { return static_cast<int>(species_.size()); }

  // Closed forms.
  double background_f(int s, double p1, double p2) const;
  double initial_f(int s, double x, double p1, double p2) const;
  double initial_e2(double x) const;
  double initial_b(double x) const;

  // Species-0 spatial perturbation shape w(x): unit peak, support |x| < r0.
  double perturbation_shape(double x) const;

  // Background tabulated on the momentum grid (np1 * np2, p2 fastest).
  const std::vector<double>& background_table(int s) const { return tables_[s]; }

  double max_initial_f() const { return max_initial_f_; }

 private:
  ProfileParams params_;
  std::vector<SpeciesParams> species_;
  std::vector<double> pert_density_amp_;  // d_s: odd density perturbation factor per species
  std::vector<double> pert_width_;        // per-species spatial perturbation radius
  std::vector<double> beta_;              // p2-drift per species
  std::vector<double> amp_;               // bump amplitude per species
  std::vector<std::vector<double>> tables_;
  double max_initial_f_ = 0.0;
};

}  // namespace vmlimit
