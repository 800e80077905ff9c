#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "vmlimit/config.hpp"
#include "vmlimit/diagnostics.hpp"
#include "vmlimit/errors.hpp"
#include "vmlimit/initial_data.hpp"
#include "vmlimit/runner.hpp"
#include "vmlimit/sweep.hpp"

using namespace vmlimit;

namespace {

SpeciesParams species(double charge, double mass, const char* label) {
  SpeciesParams sp;
  sp.charge = charge;
  sp.mass = mass;
  sp.label = label;
  return sp;
}

struct SmallState {
  PhaseSpaceGrid grid;
  std::shared_ptr<const BackgroundProfile> profile;
  MomentEngine engine;
  InitialData data;
  SpeedOfLight c;
};

SmallState make_small_state(int np) {
  SmallState st;
  st.c = SpeedOfLight::finite(8.0);
  st.grid = PhaseSpaceGrid::make(24, np, np, 6.0, 3.6, 3.6);
  ProfileParams pp;
  pp.name = "neutral-two-species";
  pp.r0 = 1.0;
  pp.q0 = 2.0;
  pp.amplitude = 0.02;
  pp.pert_amp = 0.8;
  pp.pert_p2 = 0.1;
  std::vector<SpeciesParams> sp{species(-1.0, 1.0, "neg"), species(1.0, 2.0, "pos")};
  st.profile = std::make_shared<const BackgroundProfile>(
      BackgroundProfile::build(pp, sp, st.grid));
  st.engine = MomentEngine::build(st.grid, *st.profile, st.c);
  st.data = build_initial_data(st.grid, st.profile, st.engine,
                               default_tol_neutral(st.grid));
  return st;
}

// Trapezoid weight of momentum node j on an n-node axis with spacing dp.
double trap_w(int j, int n, double dp) {
  return (j == 0 || j == n - 1) ? 0.5 * dp : dp;
}

}  // namespace

TEST_CASE("energy densities match a direct quadrature of the state") {
  SmallState st = make_small_state(17);
  EnergyDiagnostics en = energy_fields(st.data.f, st.data.fields, st.engine, st.c);
  const PhaseSpaceGrid& g = st.grid;

  REQUIRE(en.eps_tilde.size() == static_cast<size_t>(g.nx));
  long double total = 0.0L;
  for (int ix = 0; ix < g.nx; ++ix) {
    long double kin = 0.0L, mom = 0.0L, kp = 0.0L, km = 0.0L;
    for (int s = 0; s < 2; ++s) {
      const SpeciesParams& sp = st.engine.tables[s].species;
      for (int j1 = 0; j1 < g.np1; ++j1) {
        for (int j2 = 0; j2 < g.np2; ++j2) {
          double w = trap_w(j1, g.np1, g.dp1) * trap_w(j2, g.np2, g.dp2);
          double f = st.data.f.at(s, ix, j1, j2);
          Vec2 p{g.p1_node(j1), g.p2_node(j2)};
          kin += w * f * kinematics::kinetic_energy(p, sp, st.c);
          mom += w * f * kinematics::momentum_energy(p, sp, st.c);
          auto s2 = kinematics::sigma_pm(p, sp, st.c);
          kp += w * f * s2[0];
          km += w * f * s2[1];
        }
      }
    }
    double e1 = st.data.fields.e1[ix], e2 = st.data.fields.e2[ix], b = st.data.fields.b[ix];
    double field_part = (e1 * e1 + e2 * e2 + b * b) / (8.0 * std::numbers::pi);
    double eps_ref = static_cast<double>(kin) + field_part;
    double mom_ref = static_cast<double>(mom) +
                     st.c.value() * e2 * b / (4.0 * std::numbers::pi);
    double scale = std::max(std::abs(eps_ref), 1e-12);
    CHECK(std::abs(en.eps_tilde[ix] - eps_ref) <= 1e-11 * scale);
    CHECK(std::abs(en.mom_tilde[ix] - mom_ref) <= 1e-11 * std::max(std::abs(mom_ref), scale));
    CHECK(std::abs(en.kplus[ix] - static_cast<double>(kp)) <= 1e-11 * scale);
    CHECK(std::abs(en.kminus[ix] - static_cast<double>(km)) <= 1e-11 * scale);
    CHECK(en.kplus[ix] >= 0.0);
    CHECK(en.kminus[ix] >= 0.0);
    total += en.eps_tilde[ix];
  }
  double total_ref = static_cast<double>(total) * g.dx;
  CHECK(std::abs(en.total_eps_tilde - total_ref) <= 1e-11 * total_ref);
  CHECK(en.total_eps >= en.total_eps_tilde);
}

TEST_CASE("support radius follows the background momentum bump") {
  SmallState st = make_small_state(17);
  double threshold = 1e-12 * st.data.max_f0;
  double radius = support_radius(st.data.f, threshold);
  CHECK(radius <= 2.0 + 1e-12);
  CHECK(radius >= 2.0 - 2.0 * st.grid.dp1);
}

TEST_CASE("the deviation radius flags the outermost touched cell") {
  SmallState st = make_small_state(9);
  // The initial perturbation lives inside |x| <= 1.
  double threshold = 1e-12 * st.data.max_f0;
  double r0_radius = deviation_x_radius(st.data.f, threshold);
  CHECK(r0_radius <= 1.0 + st.grid.dx);
  CHECK(r0_radius > 0.0);

  DistributionField f = st.data.f;
  int ix = 20;  // x = 4.25 on this grid
  f.at(0, ix, 4, 4) = f.background->background_f(0, 0.0, 0.0) + 1.0;
  double bumped = deviation_x_radius(f, threshold);
  CHECK(bumped == std::abs(st.grid.x_center(ix)) + 0.5 * st.grid.dx);
}

TEST_CASE("triangle balance holds on a short self consistent run") {
  RunConfig cfg = RunConfig::baseline();
  cfg.c = SpeedOfLight::finite(4.0);
  cfg.nx = 64;
  cfg.np1 = 24;
  cfg.np2 = 24;
  cfg.t_final = 0.5;
  RunResult res = run_simulation(cfg);

  TriangleCheck tc = triangle_residual(res.history, 0.4, 0.0, cfg.c);
  CHECK(!tc.clipped);
  CHECK(tc.I >= 0.0);
  CHECK(tc.II >= 0.0);
  CHECK(tc.III >= 0.0);
  CHECK(tc.residual <= 5e-2 * std::max(tc.I, 1e-12));
  CHECK(tc.edge_kplus >= 0.0);
  CHECK(tc.edge_kminus >= 0.0);

  // An apex whose cone leaves the stored domain is reported, not certified.
  TriangleCheck off = triangle_residual(res.history, 0.4, 7.5, cfg.c);
  CHECK(off.clipped);
}

TEST_CASE("far field sup scans only the exterior region") {
  PhaseSpaceGrid grid = PhaseSpaceGrid::make(32, 5, 5, 4.0, 1.0, 1.0);
  RunHistory history;
  history.grid = grid;
  for (int r = 0; r <= 2; ++r) {
    HistoryRecord rec;
    rec.time = 0.5 * r;
    rec.e1.assign(grid.nx, 0.0);
    rec.e2.assign(grid.nx, 0.0);
    rec.b.assign(grid.nx, 0.0);
    rec.rho.assign(grid.nx, 0.0);
    rec.j1.assign(grid.nx, 0.0);
    rec.j2.assign(grid.nx, 0.0);
    rec.eps_tilde.assign(grid.nx, 0.0);
    rec.mom_tilde.assign(grid.nx, 0.0);
    rec.kplus.assign(grid.nx, 0.0);
    rec.kminus.assign(grid.nx, 0.0);
    history.records.push_back(std::move(rec));
  }
  // One field spike at x ~ 3.06, visible at t = 0 where the region starts
  // at |x| >= 2, gone from it by t = 1 where the region starts at 4.
  int spike = 28;
  CHECK(grid.x_center(spike) > 3.0);
  history.records[0].e2[spike] = 1.0;
  history.records[2].e2[spike] = 0.5;

  LambdaRegion region{2.0, 1.0};
  CHECK(region.contains(0.0, grid.x_center(spike)));
  CHECK(!region.contains(1.0, grid.x_center(spike)));
  LambdaSup sup = lambda_sup(history, region);
  CHECK(!sup.empty);
  CHECK(sup.value == 1.0);

  LambdaRegion far{10.0, 1.0};
  LambdaSup nothing = lambda_sup(history, far);
  CHECK(nothing.empty);
  CHECK(nothing.value == 0.0);
}

TEST_CASE("error norms are exact sup gaps plus the radiation maxima") {
  SmallState st = make_small_state(9);
  DistributionField f_limit = st.data.f;
  DistributionField f_c = st.data.f;
  f_c.values[1][f_c.grid.index(12, 4, 4)] += 0.25;

  FieldState fields_limit;
  fields_limit.resize(static_cast<size_t>(st.grid.nx));
  FieldState fields_c = fields_limit;
  fields_c.e1[5] = 0.3;
  fields_c.e2_runmax = 0.1;
  fields_c.b_runmax = 0.05;

  ErrorNorms norms = error_norms(f_c, fields_c, f_limit, fields_limit);
  CHECK(norms.h_sup[0] == 0.0);
  CHECK(norms.h_sup[1] == 0.25);
  CHECK(norms.e1_gap == 0.3);
  CHECK(norms.e2_sup == 0.1);
  CHECK(norms.b_sup == 0.05);
  CHECK(norms.total_gap == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("rate fits recover synthetic power laws to machine precision") {
  std::vector<double> cs{4.0, 8.0, 16.0, 32.0};
  std::vector<double> gaps(cs.size());
  for (size_t i = 0; i < cs.size(); ++i) gaps[i] = 3.7 * std::pow(cs[i], -1.25);
  RateFit fit = fit_rate(cs, gaps);
  CHECK(std::abs(fit.slope - (-1.25)) <= 1e-12);
  CHECK(std::abs(fit.intercept - std::log(3.7)) <= 1e-12);
  CHECK(fit.residual <= 1e-13);
  CHECK(fit.n == 4);

  for (size_t i = 0; i < cs.size(); ++i) gaps[i] = 0.02 * std::pow(cs[i], -0.5);
  fit = fit_rate(cs, gaps);
  CHECK(std::abs(fit.slope - (-0.5)) <= 1e-12);

  CHECK_THROWS_AS(fit_rate({4.0}, {0.1}), ConfigError);
  CHECK_THROWS_AS(fit_rate({4.0, 8.0}, {0.1, 0.0}), ConfigError);
}

TEST_CASE("the transverse current obeys its energy density bound") {
  SmallState st = make_small_state(17);
  EnergyDiagnostics en = energy_fields(st.data.f, st.data.fields, st.engine, st.c);
  std::vector<double> max_f0(2, 0.0);
  for (int s = 0; s < 2; ++s)
    for (double v : st.data.f.values[s])
      max_f0[static_cast<size_t>(s)] = std::max(max_f0[static_cast<size_t>(s)], v);
  BridgeReport report =
      j2_k_bridge_check(st.data.moments.j2, en, st.engine, max_f0, st.c);
  CHECK(report.pass);
  CHECK(report.margin_plus >= 0.0);
  CHECK(report.margin_minus >= 0.0);
  CHECK(report.a_const > 0.0);
  CHECK(report.b_const > 0.0);
}
