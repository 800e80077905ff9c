#include "vmlimit/history.hpp"

#include <algorithm>

#include "vmlimit/interpolation.hpp"

namespace vmlimit {

namespace {

double sample_component(const RunHistory& h,
                        std::vector<double> HistoryRecord::*comp, double t,
                        double x) {
  if (h.records.empty()) return 0.0;
  double x0 = h.grid.x_center(0);
  const auto& recs = h.records;
  if (recs.size() == 1 || t <= recs.front().time)
    return interp::sample_cell_field(recs.front().*comp, x0, h.grid.dx, x);
  if (t >= recs.back().time)
    return interp::sample_cell_field(recs.back().*comp, x0, h.grid.dx, x);

  auto it = std::lower_bound(
      recs.begin(), recs.end(), t,
      [](const HistoryRecord& r, double value) { return r.time < value; });
  const HistoryRecord& r1 = *it;
  const HistoryRecord& r0 = *(it - 1);
  double span = r1.time - r0.time;
  if (!(span > 0.0)) return interp::sample_cell_field(r1.*comp, x0, h.grid.dx, x);
  double w = (t - r0.time) / span;
  return (1.0 - w) * interp::sample_cell_field(r0.*comp, x0, h.grid.dx, x) +
         w * interp::sample_cell_field(r1.*comp, x0, h.grid.dx, x);
}

}  // namespace

double RunHistory::e1_at(double t, double x) const {
  return sample_component(*this, &HistoryRecord::e1, t, x);
}

double RunHistory::e2_at(double t, double x) const {
  return sample_component(*this, &HistoryRecord::e2, t, x);
}

double RunHistory::b_at(double t, double x) const {
  return sample_component(*this, &HistoryRecord::b, t, x);
}

}  // namespace vmlimit
