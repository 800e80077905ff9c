#pragma once

#include <vector>

#include "vmlimit/grid.hpp"

namespace vmlimit {

// Per-step spatial profiles kept for post-processing. Records are appended
// at the configured diagnostic stride; the initial state is always record 0.
struct HistoryRecord {
  double time = 0.0;
  std::vector<double> e1, e2, b;
  std::vector<double> rho, j1, j2;
  std::vector<double> eps_tilde, mom_tilde, kplus, kminus;
};

struct RunHistory {
  PhaseSpaceGrid grid;
  std::vector<HistoryRecord> records;

  // Field components sampled at arbitrary (t, x): linear between records in
  // time, cubic in x with constant extension. t outside the stored range
  // clamps to the first/last record.
  double e1_at(double t, double x) const;
  double e2_at(double t, double x) const;
  double b_at(double t, double x) const;

  double t_begin() const { return records.empty() ? 0.0 : records.front().time; }
  double t_end() const { return records.empty() ? 0.0 : records.back().time; }
};

}  // namespace vmlimit
