#include "vmlimit/maxwell.hpp"

#include <cmath>
#include <numbers>

#include "vmlimit/errors.hpp"
#include "vmlimit/initial_data.hpp"
#include "vmlimit/interpolation.hpp"

namespace vmlimit {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// One species' (density, j1, j2) partial sums over a momentum plane. The
// background residue subtraction relies on this exact summation order, so
// every moment evaluation must funnel through here.
struct PlaneSums {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
};

PlaneSums plane_sums(const double* f, const KinematicsTable& t) {
  PlaneSums s;
  size_t n = t.quad_w.size();
  for (size_t k = 0; k < n; ++k) {
    double fw = f[k] * t.quad_w[k];
    s.s0 += fw;
    s.s1 += t.v1[k] * fw;
    s.s2 += t.v2[k] * fw;
  }
  return s;
}

}  // namespace

MomentEngine MomentEngine::build(const PhaseSpaceGrid& grid,
                                 const BackgroundProfile& profile,
                                 SpeedOfLight c) {
  MomentEngine e;
  e.grid = grid;
  int ns = profile.n_species();
  e.tables.reserve(ns);
  for (int s = 0; s < ns; ++s)
    e.tables.push_back(KinematicsTable::build(grid, profile.species()[s], c));
  for (int s = 0; s < ns; ++s) {
    PlaneSums ps = plane_sums(profile.background_table(s).data(), e.tables[s]);
    double q = e.tables[s].species.charge;
    e.rho_bg += q * ps.s0;
    e.j1_bg += q * ps.s1;
    e.j2_bg += q * ps.s2;
  }
  return e;
}

void MomentEngine::compute(const DistributionField& f, SourceMoments& out) const {
  const PhaseSpaceGrid& g = f.grid;
  out.resize(static_cast<size_t>(g.nx));
  std::int64_t plane = g.plane();
  for (int i = 0; i < g.nx; ++i) {
    double rho = 0.0, j1 = 0.0, j2 = 0.0;
    for (size_t s = 0; s < tables.size(); ++s) {
      const double* cell = f.values[s].data() + static_cast<size_t>(i) * plane;
      PlaneSums ps = plane_sums(cell, tables[s]);
      double q = tables[s].species.charge;
      rho += q * ps.s0;
      j1 += q * ps.s1;
      j2 += q * ps.s2;
    }
    out.rho[i] = rho - rho_bg;
    out.j1[i] = j1 - j1_bg;
    out.j2[i] = j2 - j2_bg;
  }
}

void update_transverse(FieldState& fields, const std::vector<double>& j2_stage,
                       const PhaseSpaceGrid& grid, SpeedOfLight c, double dt) {
  int n = grid.nx;
  std::vector<double> gp(n), gm(n), gp_out(n), gm_out(n);
  for (int i = 0; i < n; ++i) {
    gp[i] = fields.gplus(i);
    gm[i] = fields.gminus(i);
  }
  double shift_cells = c.value() * dt / grid.dx;
  interp::shift_line(gp.data(), n, shift_cells, 0.0, 0.0, gp_out.data());
  interp::shift_line(gm.data(), n, -shift_cells, 0.0, 0.0, gm_out.data());
  double x0 = grid.x_center(0);
  double half_ray = 0.5 * c.value() * dt;
  for (int i = 0; i < n; ++i) {
    double x = grid.x_center(i);
    double jp = interp::sample_cell_field(j2_stage, x0, grid.dx, x - half_ray);
    double jm = interp::sample_cell_field(j2_stage, x0, grid.dx, x + half_ray);
    fields.set_from_light_cone(i, gp_out[i] - kFourPi * dt * jp,
                               gm_out[i] - kFourPi * dt * jm);
  }
}

std::vector<double> update_e1(const SourceMoments& moments,
                              const PhaseSpaceGrid& grid, double tol_neutral) {
  return gauss_e1(moments.rho, grid.dx, tol_neutral);
}

double ampere_residual(const std::vector<std::vector<double>>& e1_series,
                       const std::vector<std::vector<double>>& j1_series,
                       double dt) {
  size_t nt = e1_series.size();
  if (nt < 3 || j1_series.size() != nt)
    throw SolverError("ampere_residual needs at least 3 aligned time levels");
  double worst = 0.0;
  for (size_t n = 1; n + 1 < nt; ++n) {
    size_t nx = e1_series[n].size();
    for (size_t i = 0; i < nx; ++i) {
      double dte1 = (e1_series[n + 1][i] - e1_series[n - 1][i]) / (2.0 * dt);
      double r = std::abs(dte1 + kFourPi * j1_series[n][i]);
      if (r > worst) worst = r;
    }
  }
  return worst;
}

}  // namespace vmlimit
