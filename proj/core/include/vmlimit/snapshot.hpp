#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vmlimit/fields.hpp"
#include "vmlimit/grid.hpp"
#include "vmlimit/history.hpp"
#include "vmlimit/kinematics.hpp"

namespace vmlimit {

// Full phase-space state file. Layout, all little-endian:
//   magic "VML1"
//   u32 n_species, nx, np1, np2
//   f64 c (IEEE +inf for the limit system), t, x_max, p1_max, p2_max
//   f64 f arrays, species-major, each in (x, p1, p2) storage order
//   f64 e1[nx], e2[nx], b[nx]
// The contract is bit-exact: write then read reproduces every byte.
struct SnapshotData {
  std::uint32_t n_species = 0, nx = 0, np1 = 0, np2 = 0;
  double c_storage = 0.0;  // +inf encodes the limit system
  double t = 0.0;
  double x_max = 0.0, p1_max = 0.0, p2_max = 0.0;
  std::vector<std::vector<double>> f;
  std::vector<double> e1, e2, b;

  SpeedOfLight c() const;
};

void write_snapshot(const std::string& path, const SnapshotData& data);
SnapshotData read_snapshot(const std::string& path);

// Throws SnapshotError when the file's dimensions disagree with the grid.
void require_shape(const SnapshotData& data, const PhaseSpaceGrid& grid,
                   int n_species);

// Recorded diagnostic history, enough for post-hoc triangle and far-field
// checks. Layout: magic "VMH1", u32 nx, u32 n_records, f64 c, x_max,
// then per record: f64 time + the ten per-cell arrays in declaration order.
void write_history(const std::string& path, const RunHistory& history,
                   SpeedOfLight c);
RunHistory read_history(const std::string& path, SpeedOfLight& c_out);

}  // namespace vmlimit
