#include "vmlimit/grid.hpp"

#include <string>

namespace vmlimit {

PhaseSpaceGrid PhaseSpaceGrid::make(int nx, int np1, int np2, double x_max, double p1_max,
                                    double p2_max, int nghost) {
  if (nx < 8 || np1 < 8 || np2 < 8)
    throw std::invalid_argument("PhaseSpaceGrid: all grid counts must be >= 8");
  if (!(x_max > 0.0) || !(p1_max > 0.0) || !(p2_max > 0.0))
    throw std::invalid_argument("PhaseSpaceGrid: domain half-widths must be positive");
  if (nghost < 2 || 2 * nghost >= nx)
    throw std::invalid_argument("PhaseSpaceGrid: need 2 <= nghost and 2*nghost < nx");
  PhaseSpaceGrid g;
  g.nx = nx;
  g.np1 = np1;
  g.np2 = np2;
  g.x_max = x_max;
  g.p1_max = p1_max;
  g.p2_max = p2_max;
  g.dx = 2.0 * x_max / nx;
  g.dp1 = 2.0 * p1_max / (np1 - 1);
  g.dp2 = 2.0 * p2_max / (np2 - 1);
  g.nghost = nghost;
  return g;
}

void PhaseSpaceGrid::check_coverage(double r0, double t_final, double min_mass) const {
  double reach = r0 + p1_max / min_mass * t_final + 2.0 * dx * nghost;
  if (x_max < reach)
    throw std::invalid_argument(
        "PhaseSpaceGrid: spatial domain too small: need X >= R0 + (P1max/m0)*T + 2*dx*nghost = " +
        std::to_string(reach) + ", have X = " + std::to_string(x_max));
}

}  // namespace vmlimit
