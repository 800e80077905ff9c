#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace vmlimit {

// Electromagnetic state on the spatial grid.  E2 and B are stored directly;
// the light-cone pair G+- = E2 +- B is formed on demand and written back via
// set_from_light_cone, so the two views never drift apart by more than the
// rounding of one add and one halving.
struct FieldState {
  std::vector<double> e1, e2, b;
  double e2_runmax = 0.0;  // running max of |E2| over all steps and cells
  double b_runmax = 0.0;

  void resize(std::size_t nx) {
    e1.assign(nx, 0.0);
    e2.assign(nx, 0.0);
    b.assign(nx, 0.0);
  }
  std::size_t nx() const { return e1.size(); }

  double gplus(std::size_t i) const { return e2[i] + b[i]; }
  double gminus(std::size_t i) const { return e2[i] - b[i]; }
  void set_from_light_cone(std::size_t i, double gp, double gm) {
    e2[i] = 0.5 * (gp + gm);
    b[i] = 0.5 * (gp - gm);
  }

  void update_runmax() {
    for (double v : e2)
      if (std::abs(v) > e2_runmax) e2_runmax = std::abs(v);
    for (double v : b)
      if (std::abs(v) > b_runmax) b_runmax = std::abs(v);
  }
};

// Charge and current densities on the spatial grid.
struct SourceMoments {
  std::vector<double> rho, j1, j2;

  void resize(std::size_t nx) {
    rho.assign(nx, 0.0);
    j1.assign(nx, 0.0);
    j2.assign(nx, 0.0);
  }
  std::size_t nx() const { return rho.size(); }
};

}  // namespace vmlimit
