#include "vmlimit/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace vmlimit {

DistributionField DistributionField::from_profile(
    const PhaseSpaceGrid& grid, std::shared_ptr<const BackgroundProfile> profile) {
  DistributionField f;
  f.grid = grid;
  f.background = std::move(profile);
  int ns = f.background->n_species();
  f.values.assign(ns, std::vector<double>(static_cast<size_t>(grid.cells()), 0.0));
  for (int s = 0; s < ns; ++s)
    for (int i = 0; i < grid.nx; ++i) {
      double x = grid.x_center(i);
      for (int j1 = 0; j1 < grid.np1; ++j1)
        for (int j2 = 0; j2 < grid.np2; ++j2)
          f.at(s, i, j1, j2) = f.background->initial_f(s, x, grid.p1_node(j1), grid.p2_node(j2));
    }
  f.refill_ghost_bands();
  return f;
}

void DistributionField::refill_ghost_bands() {
  for (int s = 0; s < n_species(); ++s) {
    const std::vector<double>& table = background->background_table(s);
    for (int band = 0; band < grid.nghost; ++band) {
      int left = band, right = grid.nx - 1 - band;
      std::copy(table.begin(), table.end(),
                values[s].begin() + grid.index(left, 0, 0));
      std::copy(table.begin(), table.end(),
                values[s].begin() + grid.index(right, 0, 0));
    }
  }
}

double DistributionField::max_deviation_from_background() const {
  double dev = 0.0;
  for (int s = 0; s < n_species(); ++s) {
    const std::vector<double>& table = background->background_table(s);
    const std::vector<double>& v = values[s];
    std::int64_t plane = grid.plane();
    for (int i = 0; i < grid.nx; ++i) {
      const double* cell = v.data() + static_cast<size_t>(i) * plane;
      for (std::int64_t k = 0; k < plane; ++k)
        dev = std::max(dev, std::abs(cell[k] - table[static_cast<size_t>(k)]));
    }
  }
  return dev;
}

}  // namespace vmlimit
