#pragma once

#include <memory>
#include <vector>

#include "vmlimit/grid.hpp"
#include "vmlimit/profile.hpp"

namespace vmlimit {

// Per-species distribution functions over (x, p1, p2), plus the background
// they relax to beyond the perturbed region.  Outside the spatial grid the
// distribution is the background by definition; outside the momentum box it
// is zero.
struct DistributionField {
  PhaseSpaceGrid grid;
  std::shared_ptr<const BackgroundProfile> background;
  std::vector<std::vector<double>> values;  // [species][cell], layout per grid.index

  int n_species() const { return static_cast<int>(values.size()); }

  double& at(int s, int ix, int j1, int j2) {
    return values[s][static_cast<size_t>(grid.index(ix, j1, j2))];
  }
  double at(int s, int ix, int j1, int j2) const {
    return values[s][static_cast<size_t>(grid.index(ix, j1, j2))];
  }

  // Fills every cell from the profile's closed-form initial state.
  static DistributionField from_profile(const PhaseSpaceGrid& grid,
                                        std::shared_ptr<const BackgroundProfile> profile);

  // Overwrites the nghost outer x-bands of every species with the background.
  void refill_ghost_bands();

  // Max |f - F| over all species and cells (support and comparison checks).
  double max_deviation_from_background() const;
};

}  // namespace vmlimit
