#include "vmlimit/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vmlimit/errors.hpp"

namespace vmlimit {

namespace {

double cubed_bump(double u2) {
  // (1 - u^2)^3 restricted to u^2 < 1; C^2 across the support edge.
  double a = 1.0 - u2;
  return a > 0.0 ? a * a * a : 0.0;
}

}  // namespace

BackgroundProfile BackgroundProfile::build(const ProfileParams& params,
                                           const std::vector<SpeciesParams>& species,
                                           const PhaseSpaceGrid& grid) {
  if (params.name != "neutral-two-species" && params.name != "free-streaming" &&
      params.name != "vacuum")
    throw ConfigError("BackgroundProfile: unknown profile '" + params.name + "'");
  if (!(params.r0 > 0.0) || !(params.q0 > 0.0))
    throw ConfigError("BackgroundProfile: r0 and q0 must be positive");

  BackgroundProfile bp;
  bp.params_ = params;
  bp.species_ = species;
  int ns = static_cast<int>(species.size());
  bp.amp_.assign(ns, 0.0);
  bp.beta_.assign(ns, 0.0);
  bp.pert_density_amp_.assign(ns, 0.0);
  bp.pert_width_.assign(ns, params.r0);

  if (params.name == "neutral-two-species") {
    if (ns != 2)
      throw ConfigError("BackgroundProfile: neutral-two-species needs exactly 2 species");
    double e0 = species[0].charge, e1 = species[1].charge;
    if (!(e0 * e1 < 0.0))
      throw ConfigError("BackgroundProfile: species charges must have opposite signs");
    // Charge neutrality of the backgrounds fixes the amplitude ratio; the
    // compensated p2 drift cancels the net background current in the p/m
    // moment.
    bp.amp_[0] = params.amplitude;
    bp.amp_[1] = params.amplitude * std::abs(e0) / std::abs(e1);
    bp.beta_[0] = params.drift;
    bp.beta_[1] = params.drift * species[1].mass / species[0].mass;
    for (int s = 0; s < 2; ++s)
      if (std::abs(bp.beta_[s]) >= 1.0)
        throw ConfigError(
            "BackgroundProfile: background drift too large, F would go negative (species " +
            species[s].label + ")");
    // Only species 0 carries the density perturbation. Its odd spatial
    // shape integrates to zero, so the perturbed state stays globally
    // neutral while the local charge density is first order in pert_amp.
    bp.pert_density_amp_[0] = params.pert_amp;
    bp.pert_width_[0] = params.r0;
  } else if (params.name == "free-streaming") {
    // Force-free translate family: every charge must vanish so the fields
    // stay identically zero and the exact solution is the kinematic shift
    // f(t, x, p) = f0(x - V1(p) t, p).
    for (const SpeciesParams& sp : species)
      if (sp.charge != 0.0)
        throw ConfigError("BackgroundProfile: free-streaming requires zero charges (species " +
                          sp.label + ")");
    for (int s = 0; s < ns; ++s) {
      bp.amp_[s] = params.amplitude;
      bp.pert_density_amp_[s] = params.pert_amp;
      bp.pert_width_[s] = params.r0;
    }
  }

  // Momentum-grid tables of F^a and the global initial peak.
  bp.tables_.assign(ns, std::vector<double>(static_cast<size_t>(grid.plane()), 0.0));
  double fmax = 0.0;
  for (int s = 0; s < ns; ++s) {
    for (int j1 = 0; j1 < grid.np1; ++j1)
      for (int j2 = 0; j2 < grid.np2; ++j2) {
        double v = bp.background_f(s, grid.p1_node(j1), grid.p2_node(j2));
        bp.tables_[s][static_cast<size_t>(j1) * grid.np2 + j2] = v;
      }
    for (int i = 0; i < grid.nx; ++i)
      for (int j1 = 0; j1 < grid.np1; ++j1)
        for (int j2 = 0; j2 < grid.np2; ++j2)
          fmax = std::max(fmax, bp.initial_f(s, grid.x_center(i), grid.p1_node(j1),
                                             grid.p2_node(j2)));
  }
  bp.max_initial_f_ = fmax;
  return bp;
}

double BackgroundProfile::background_f(int s, double p1, double p2) const {
  if (params_.name == "vacuum") return 0.0;
  double q0 = params_.q0;
  double b = cubed_bump((p1 * p1 + p2 * p2) / (q0 * q0));
  return amp_[s] * b * (1.0 + beta_[s] * p2 / q0);
}

double BackgroundProfile::initial_f(int s, double x, double p1, double p2) const {
  if (params_.name == "vacuum") return 0.0;
  double q0 = params_.q0;
  double rs = pert_width_[s];
  double u = x / rs;
  double w = cubed_bump(u * u);
  // Odd modulation u*w: zero total charge by symmetry, peak |u*w| ~ 0.238.
  double f = background_f(s, p1, p2) * (1.0 + pert_density_amp_[s] * u * w);
  if (s == 0 && params_.pert_p2 != 0.0) {
    double w0 = cubed_bump((x / params_.r0) * (x / params_.r0));
    double b = cubed_bump((p1 * p1 + p2 * p2) / (q0 * q0));
    f += params_.pert_p2 * amp_[0] * w0 * b * (p2 / q0);
  }
  return f;
}

double BackgroundProfile::initial_e2(double x) const {
  return params_.e2_amp * cubed_bump((x / params_.r0) * (x / params_.r0));
}

double BackgroundProfile::initial_b(double x) const {
  return params_.b_amp * cubed_bump((x / params_.r0) * (x / params_.r0));
}

double BackgroundProfile::perturbation_shape(double x) const {
  return cubed_bump((x / params_.r0) * (x / params_.r0));
}

}  // namespace vmlimit
