#include "vmlimit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vmlimit/interpolation.hpp"

namespace vmlimit {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kEightPi = 8.0 * std::numbers::pi;
}  // namespace

EnergyDiagnostics energy_fields(const DistributionField& f,
                                const FieldState& fields,
                                const MomentEngine& engine, SpeedOfLight c) {
  const PhaseSpaceGrid& grid = f.grid;
  int nx = grid.nx;
  std::int64_t plane = grid.plane();
  bool finite = c.is_finite();
  double c2 = finite ? c.value() * c.value() : 0.0;

  EnergyDiagnostics out;
  out.eps.resize(nx);
  out.mom.resize(nx);
  out.eps_tilde.resize(nx);
  out.mom_tilde.resize(nx);
  out.kplus.resize(nx);
  out.kminus.resize(nx);

  for (int ix = 0; ix < nx; ++ix) {
    double kin = 0.0, mo = 0.0, kp = 0.0, km = 0.0;
    double rest_e = 0.0, rest_m = 0.0;
    for (int s = 0; s < f.n_species(); ++s) {
      const KinematicsTable& t = engine.tables[s];
      const double* cell =
          f.values[s].data() + static_cast<std::int64_t>(ix) * plane;
      double n = 0.0, k1 = 0.0, m1 = 0.0, sp = 0.0, sm = 0.0, v1m = 0.0;
      for (std::int64_t k = 0; k < plane; ++k) {
        double fw = cell[k] * t.quad_w[static_cast<size_t>(k)];
        n += fw;
        k1 += t.kin[static_cast<size_t>(k)] * fw;
        m1 += t.mom1[static_cast<size_t>(k)] * fw;
        sp += t.sig_plus[static_cast<size_t>(k)] * fw;
        sm += t.sig_minus[static_cast<size_t>(k)] * fw;
        if (finite) v1m += t.v1[static_cast<size_t>(k)] * fw;
      }
      kin += k1;
      mo += m1;
      kp += sp;
      km += sm;
      rest_e += t.species.mass * n;
      rest_m += t.species.mass * v1m;
    }
    double e1 = fields.e1[ix], e2 = fields.e2[ix], b = fields.b[ix];
    double field_e = (e1 * e1 + e2 * e2 + b * b) / kEightPi;
    double field_m = finite ? c.value() * e2 * b / kFourPi : 0.0;
    out.eps_tilde[ix] = kin + field_e;
    out.mom_tilde[ix] = mo + field_m;
    out.kplus[ix] = kp;
    out.kminus[ix] = km;
    out.eps[ix] = finite ? out.eps_tilde[ix] + c2 * rest_e : out.eps_tilde[ix];
    out.mom[ix] = finite ? out.mom_tilde[ix] + c2 * rest_m : out.mom_tilde[ix];
  }

  long double te = 0.0L, tet = 0.0L, tmt = 0.0L;
  for (int ix = 0; ix < nx; ++ix) {
    te += out.eps[ix];
    tet += out.eps_tilde[ix];
    tmt += out.mom_tilde[ix];
  }
  out.total_eps = static_cast<double>(te) * grid.dx;
  out.total_eps_tilde = static_cast<double>(tet) * grid.dx;
  out.total_mom_tilde = static_cast<double>(tmt) * grid.dx;

  out.kplus_min = out.kplus.empty() ? 0.0 : out.kplus[0];
  out.kplus_max = out.kplus_min;
  out.kminus_min = out.kminus.empty() ? 0.0 : out.kminus[0];
  out.kminus_max = out.kminus_min;
  for (int ix = 0; ix < nx; ++ix) {
    out.kplus_min = std::min(out.kplus_min, out.kplus[ix]);
    out.kplus_max = std::max(out.kplus_max, out.kplus[ix]);
    out.kminus_min = std::min(out.kminus_min, out.kminus[ix]);
    out.kminus_max = std::max(out.kminus_max, out.kminus[ix]);
  }
  return out;
}

double support_radius(const DistributionField& f, double threshold) {
  const PhaseSpaceGrid& grid = f.grid;
  std::int64_t plane = grid.plane();
  std::vector<double> r2(static_cast<size_t>(plane));
  for (int j1 = 0; j1 < grid.np1; ++j1)
    for (int j2 = 0; j2 < grid.np2; ++j2) {
      double p1 = grid.p1_node(j1), p2 = grid.p2_node(j2);
      r2[static_cast<size_t>(j1) * grid.np2 + j2] = p1 * p1 + p2 * p2;
    }

  double best = 0.0;
  for (int s = 0; s < f.n_species(); ++s) {
    const std::vector<double>& bg = f.background->background_table(s);
    const double* data = f.values[s].data();
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double* cell = data + static_cast<std::int64_t>(ix) * plane;
      for (std::int64_t k = 0; k < plane; ++k) {
        if (r2[static_cast<size_t>(k)] <= best) continue;
        double v = cell[k];
        if (v > threshold || std::abs(v - bg[static_cast<size_t>(k)]) > threshold)
          best = r2[static_cast<size_t>(k)];
      }
    }
  }
  return std::sqrt(best);
}

double deviation_x_radius(const DistributionField& f, double threshold) {
  const PhaseSpaceGrid& grid = f.grid;
  std::int64_t plane = grid.plane();
  double best = 0.0;
  for (int s = 0; s < f.n_species(); ++s) {
    const std::vector<double>& bg = f.background->background_table(s);
    const double* data = f.values[s].data();
    for (int ix = 0; ix < grid.nx; ++ix) {
      double edge = std::abs(grid.x_center(ix)) + 0.5 * grid.dx;
      if (edge <= best) continue;
      const double* cell = data + static_cast<std::int64_t>(ix) * plane;
      for (std::int64_t k = 0; k < plane; ++k)
        if (std::abs(cell[k] - bg[static_cast<size_t>(k)]) > threshold) {
          best = edge;
          break;
        }
    }
  }
  return best;
}

bool LambdaRegion::contains(double t, double x) const {
  return std::abs(x) >= d0 * (1.0 + t / m0);
}

LambdaSup lambda_sup(const RunHistory& history, const LambdaRegion& region) {
  LambdaSup out;
  for (const HistoryRecord& rec : history.records)
    for (int i = 0; i < history.grid.nx; ++i) {
      if (!region.contains(rec.time, history.grid.x_center(i))) continue;
      out.empty = false;
      double v = std::abs(rec.e1[i]) + std::abs(rec.e2[i]) + std::abs(rec.b[i]);
      out.value = std::max(out.value, v);
    }
  return out;
}

namespace {

// Linear-in-time, cubic-in-x sample of a stored per-record array.
double record_sample(const RunHistory& h,
                     std::vector<double> HistoryRecord::*comp, double t,
                     double x) {
  const auto& recs = h.records;
  double x0 = h.grid.x_center(0);
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

TriangleCheck triangle_residual(const RunHistory& history, double apex_t,
                                double apex_x, SpeedOfLight c) {
  TriangleCheck out;
  if (history.records.empty() || c.is_infinite()) {
    out.clipped = true;
    return out;
  }
  const PhaseSpaceGrid& grid = history.grid;
  double cv = c.value();
  double cinv = 1.0 / cv;
  double xl = apex_x - cv * apex_t;
  double xr = apex_x + cv * apex_t;

  if (history.records.front().time > 0.0 || apex_t < 0.0 ||
      apex_t > history.t_end() + 1e-12 * std::max(1.0, history.t_end()) ||
      xl < -grid.x_max || xr > grid.x_max)
    out.clipped = true;

  // Base: c^-1 int of eps_tilde(0, y) over the cone base, cell overlaps.
  const HistoryRecord& rec0 = history.records.front();
  long double base = 0.0L;
  for (int i = 0; i < grid.nx; ++i) {
    double lo = grid.x_center(i) - 0.5 * grid.dx;
    double hi = grid.x_center(i) + 0.5 * grid.dx;
    double len = std::min(hi, xr) - std::max(lo, xl);
    if (len > 0.0) base += static_cast<long double>(rec0.eps_tilde[i]) * len;
  }
  out.I = cinv * static_cast<double>(base);

  // Edge integrals: trapezoid over the stored record times within [0, apex_t].
  std::vector<double> taus;
  for (const HistoryRecord& r : history.records)
    if (r.time < apex_t) taus.push_back(r.time);
  taus.push_back(apex_t);

  long double ii = 0.0L, iii = 0.0L, ekp = 0.0L, ekm = 0.0L;
  for (size_t n = 0; n < taus.size(); ++n) {
    double tau = taus[n];
    double w;
    if (taus.size() == 1)
      w = 0.0;
    else if (n == 0)
      w = 0.5 * (taus[1] - taus[0]);
    else if (n + 1 == taus.size())
      w = 0.5 * (taus[n] - taus[n - 1]);
    else
      w = 0.5 * (taus[n + 1] - taus[n - 1]);

    double yr = apex_x + cv * (apex_t - tau);
    double yl = apex_x - cv * (apex_t - tau);
    if (std::abs(yr) > grid.x_max || std::abs(yl) > grid.x_max)
      out.clipped = true;
    double er = record_sample(history, &HistoryRecord::eps_tilde, tau, yr);
    double mr = record_sample(history, &HistoryRecord::mom_tilde, tau, yr);
    double el = record_sample(history, &HistoryRecord::eps_tilde, tau, yl);
    double ml = record_sample(history, &HistoryRecord::mom_tilde, tau, yl);
    ii += w * (er + cinv * mr);
    iii += w * (el - cinv * ml);
    ekp += w * record_sample(history, &HistoryRecord::kplus, tau, yr);
    ekm += w * record_sample(history, &HistoryRecord::kminus, tau, yl);
  }
  out.II = static_cast<double>(ii);
  out.III = static_cast<double>(iii);
  out.edge_kplus = static_cast<double>(ekp);
  out.edge_kminus = static_cast<double>(ekm);
  out.residual = out.I - out.II - out.III;
  return out;
}

BridgeReport j2_k_bridge_check(const std::vector<double>& j2,
                               const EnergyDiagnostics& energy,
                               const MomentEngine& engine,
                               const std::vector<double>& max_f0_per_species,
                               SpeedOfLight c) {
  BridgeReport out;

  // A bounds the |p| < 1 zone crudely: f <= max f0 and |V2| <= 1/m there,
  // so the zone contributes at most |e| max f0 (pi/m) per species. B covers
  // the outer zones through |V2| <= B sigma_pm node-wise: 4(m^2+1)/m^2 for
  // 1 <= |p| <= c and 2(m^2+1)/(m c) beyond.
  for (size_t s = 0; s < engine.tables.size(); ++s) {
    const KinematicsTable& t = engine.tables[s];
    double e = std::abs(t.species.charge);
    double m = t.species.mass;
    out.a_const += e * max_f0_per_species[s] * std::numbers::pi / m;
    double b_mid = e * 4.0 * (m * m + 1.0) / (m * m);
    double b_far = c.is_finite() ? e * 2.0 * (m * m + 1.0) / (m * c.value())
                                 : 0.0;
    out.b_const = std::max(out.b_const, std::max(b_mid, b_far));
  }

  double mp = 0.0, mm = 0.0;
  bool first = true;
  for (size_t i = 0; i < j2.size(); ++i) {
    double lhs = std::abs(j2[i]);
    double rp = out.a_const + out.b_const * energy.kplus[i] - lhs;
    double rm = out.a_const + out.b_const * energy.kminus[i] - lhs;
    if (first) {
      mp = rp;
      mm = rm;
      first = false;
    } else {
      mp = std::min(mp, rp);
      mm = std::min(mm, rm);
    }
  }
  out.margin_plus = mp;
  out.margin_minus = mm;
  out.pass = !first && mp >= 0.0 && mm >= 0.0;
  return out;
}

ErrorNorms error_norms(const DistributionField& f_c, const FieldState& fields_c,
                       const DistributionField& f_limit,
                       const FieldState& fields_limit) {
  if (!f_c.grid.same_shape(f_limit.grid) ||
      f_c.n_species() != f_limit.n_species() ||
      fields_c.nx() != fields_limit.nx())
    throw std::invalid_argument(
        "error_norms: states live on different grids or species sets");

  ErrorNorms out;
  out.h_sup.resize(f_c.n_species(), 0.0);
  for (int s = 0; s < f_c.n_species(); ++s) {
    double sup = 0.0;
    const auto& a = f_c.values[s];
    const auto& b = f_limit.values[s];
    for (size_t i = 0; i < a.size(); ++i)
      sup = std::max(sup, std::abs(a[i] - b[i]));
    out.h_sup[s] = sup;
  }
  for (size_t i = 0; i < fields_c.e1.size(); ++i)
    out.e1_gap = std::max(out.e1_gap,
                          std::abs(fields_c.e1[i] - fields_limit.e1[i]));
  out.e2_sup = fields_c.e2_runmax;
  out.b_sup = fields_c.b_runmax;

  double hmax = 0.0;
  for (double h : out.h_sup) hmax = std::max(hmax, h);
  out.total_gap = hmax + out.e1_gap + out.e2_sup + out.b_sup;
  return out;
}

}  // namespace vmlimit
