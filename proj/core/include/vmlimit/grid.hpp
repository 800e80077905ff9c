#pragma once

#include <cstdint>
#include <stdexcept>

namespace vmlimit {

// Uniform phase-space grid for one spatial and two momentum directions.
//
// x is cell-centered on [-X, X]: x_i = -X + (i + 1/2) dx.  The outermost
// `nghost` cell bands on each side always hold the spatial background; the
// grid must be wide enough that perturbations never reach them.
//
// p is node-centered and symmetric: p_j = (j - (N-1)/2) dp, so the grid
// contains +-Pmax and every node has an exact mirror partner.
struct PhaseSpaceGrid {
  int nx = 0;
  int np1 = 0;
  int np2 = 0;
  double x_max = 0.0;   // half-width X
  double p1_max = 0.0;  // momentum box half-widths
  double p2_max = 0.0;
  double dx = 0.0;
  double dp1 = 0.0;
  double dp2 = 0.0;
  int nghost = 3;

  static PhaseSpaceGrid make(int nx, int np1, int np2, double x_max, double p1_max,
                             double p2_max, int nghost = 3);

  double x_center(int i) const { return -x_max + (i + 0.5) * dx; }
  double p1_node(int j) const { return (j - 0.5 * (np1 - 1)) * dp1; }
  double p2_node(int j) const { return (j - 0.5 * (np2 - 1)) * dp2; }

  std::int64_t plane() const { return static_cast<std::int64_t>(np1) * np2; }
  std::int64_t cells() const { return static_cast<std::int64_t>(nx) * plane(); }

  // Storage order: x slowest, then p1, then p2.
  std::int64_t index(int ix, int j1, int j2) const {
    return (static_cast<std::int64_t>(ix) * np1 + j1) * np2 + j2;
  }

  bool same_shape(const PhaseSpaceGrid& o) const {
    return nx == o.nx && np1 == o.np1 && np2 == o.np2 && x_max == o.x_max &&
           p1_max == o.p1_max && p2_max == o.p2_max;
  }

  // Matter supported in |x| <= r0 moving no faster than p1_max/m0 must stay
  // clear of the ghost bands for the whole run.
  void check_coverage(double r0, double t_final, double min_mass) const;
};

}  // namespace vmlimit
