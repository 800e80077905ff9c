#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <vector>

#include "vmlimit/config.hpp"
#include "vmlimit/errors.hpp"
#include "vmlimit/initial_data.hpp"
#include "vmlimit/kinematics.hpp"
#include "vmlimit/maxwell.hpp"
#include "vmlimit/runner.hpp"
#include "vmlimit/vlasov.hpp"

using namespace vmlimit;

namespace {

SpeciesParams species(double charge, double mass, const char* label) {
  SpeciesParams sp;
  sp.charge = charge;
  sp.mass = mass;
  sp.label = label;
  return sp;
}

struct SmallSystem {
  PhaseSpaceGrid grid;
  std::shared_ptr<BackgroundProfile> profile;
  std::vector<KinematicsTable> tables;
  DistributionField f;
};

SmallSystem make_small_system(SpeedOfLight c) {
  SmallSystem sys;
  sys.grid = PhaseSpaceGrid::make(24, 9, 9, 6.0, 3.6, 3.6);
  ProfileParams pp;
  pp.name = "neutral-two-species";
  pp.r0 = 1.0;
  pp.q0 = 2.0;
  pp.amplitude = 0.02;
  pp.pert_amp = 0.8;
  std::vector<SpeciesParams> sp{species(-1.0, 1.0, "neg"), species(1.0, 2.0, "pos")};
  sys.profile = std::make_shared<BackgroundProfile>(
      BackgroundProfile::build(pp, sp, sys.grid));
  for (const SpeciesParams& s : sp)
    sys.tables.push_back(KinematicsTable::build(sys.grid, s, c));
  sys.f = DistributionField::from_profile(
      sys.grid, std::static_pointer_cast<const BackgroundProfile>(sys.profile));
  return sys;
}

// Backward momentum characteristic integrated with many RK4 substeps, used
// as the reference the one-step midpoint foot is compared against.
Vec2 reference_foot(Vec2 p, double e1, double e2, double b,
                    const SpeciesParams& sp, SpeedOfLight c, double dt, int steps) {
  auto rhs = [&](Vec2 q) -> Vec2 {
    Vec2 v = kinematics::velocity(q, sp, c);
    double cinv = c.inverse();
    return {-sp.charge * (e1 + cinv * v[1] * b), -sp.charge * (e2 - cinv * v[0] * b)};
  };
  Vec2 q = p;
  double h = dt / steps;
  for (int k = 0; k < steps; ++k) {
    Vec2 k1 = rhs(q);
    Vec2 k2 = rhs({q[0] + 0.5 * h * k1[0], q[1] + 0.5 * h * k1[1]});
    Vec2 k3 = rhs({q[0] + 0.5 * h * k2[0], q[1] + 0.5 * h * k2[1]});
    Vec2 k4 = rhs({q[0] + h * k3[0], q[1] + h * k3[1]});
    q[0] += h * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]) / 6.0;
    q[1] += h * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]) / 6.0;
  }
  return q;
}

double foot_error(double dt) {
  SpeciesParams sp = species(-1.0, 1.0, "neg");
  SpeedOfLight c = SpeedOfLight::finite(4.0);
  Vec2 p{0.8, -0.5};
  double e1 = 0.3, e2 = -0.2, b = 0.5;
  Vec2 foot = kick_foot(p, e1, e2, b, sp, c, dt);
  Vec2 ref = reference_foot(p, e1, e2, b, sp, c, dt, 256);
  return std::hypot(foot[0] - ref[0], foot[1] - ref[1]);
}

}  // namespace

TEST_CASE("the midpoint kick foot has third order local error") {
  double e_full = foot_error(0.4);
  double e_half = foot_error(0.2);
  double ratio = e_full / e_half;
  CHECK(e_full < 1e-2);
  CHECK(ratio > 5.5);
  CHECK(ratio < 10.5);
}

TEST_CASE("a kick under zero fields leaves the distribution bit identical") {
  SpeedOfLight c = SpeedOfLight::finite(8.0);
  SmallSystem sys = make_small_system(c);
  FieldState fields;
  fields.resize(static_cast<size_t>(sys.grid.nx));
  DistributionField before = sys.f;
  ScratchBuffers scratch;
  kick_p(sys.f, fields, sys.tables, c, 0.1, scratch);
  for (int s = 0; s < sys.f.n_species(); ++s)
    for (size_t k = 0; k < sys.f.values[s].size(); ++k)
      REQUIRE(sys.f.values[s][k] == before.values[s][k]);
}

TEST_CASE("spatial advection conserves interior mass and positivity") {
  SpeedOfLight c = SpeedOfLight::finite(8.0);
  SmallSystem sys = make_small_system(c);
  ScratchBuffers scratch;
  int ng = sys.grid.nghost;

  auto interior_mass = [&](int s) {
    long double m = 0.0L;
    for (int ix = ng; ix < sys.grid.nx - ng; ++ix)
      for (int j1 = 0; j1 < sys.grid.np1; ++j1)
        for (int j2 = 0; j2 < sys.grid.np2; ++j2) m += sys.f.at(s, ix, j1, j2);
    return static_cast<double>(m);
  };
  double m0 = interior_mass(0);
  double m1 = interior_mass(1);

  advect_x(sys.f, sys.tables, 0.05, scratch);

  CHECK(std::abs(interior_mass(0) - m0) <= 1e-13 * m0);
  CHECK(std::abs(interior_mass(1) - m1) <= 1e-13 * m1);
  double fmin = 0.0;
  for (const auto& sp : sys.f.values)
    for (double v : sp) fmin = std::min(fmin, v);
  CHECK(fmin >= 0.0);
}

TEST_CASE("advection rejects steps that overrun the ghost guard") {
  SpeedOfLight c = SpeedOfLight::finite(8.0);
  SmallSystem sys = make_small_system(c);
  ScratchBuffers scratch;
  // max |V1| is close to 3.2 here, dx = 0.5, guard (nghost-1) dx = 1.0.
  CHECK_THROWS_AS(advect_x(sys.f, sys.tables, 1.0, scratch), CflError);
}

TEST_CASE("free streaming converges to the translated profile at second order") {
  auto sup_error = [](int nx) {
    RunConfig cfg = RunConfig::baseline();
    cfg.nx = nx;
    cfg.np1 = 16;
    cfg.np2 = 16;
    cfg.t_final = 1.0;
    cfg.profile.name = "free-streaming";
    cfg.profile.pert_amp = 0.8;
    cfg.profile.pert_p2 = 0.0;
    cfg.species = {species(0.0, 1.0, "a"), species(0.0, 2.0, "b")};
    RunResult res = run_simulation(cfg);

    PhaseSpaceGrid grid = res.grid;
    auto profile = std::make_shared<BackgroundProfile>(
        BackgroundProfile::build(cfg.profile, cfg.species, grid));
    double worst = 0.0;
    for (int s = 0; s < 2; ++s) {
      for (int ix = 0; ix < grid.nx; ++ix) {
        for (int j1 = 0; j1 < grid.np1; ++j1) {
          for (int j2 = 0; j2 < grid.np2; ++j2) {
            Vec2 p{grid.p1_node(j1), grid.p2_node(j2)};
            double v1 = kinematics::velocity(p, cfg.species[s], cfg.c)[0];
            double exact = profile->initial_f(
                s, grid.x_center(ix) - v1 * cfg.t_final, p[0], p[1]);
            worst = std::max(worst,
                             std::abs(res.state.f.at(s, ix, j1, j2) - exact));
          }
        }
      }
    }
    return worst;
  };
  double coarse = sup_error(32);
  double fine = sup_error(64);
  CHECK(coarse < 5e-3);
  CHECK(fine <= coarse / 3.5);
}

TEST_CASE("a strang step lands on a state satisfying the gauss law") {
  SpeedOfLight c = SpeedOfLight::finite(8.0);
  SmallSystem sys = make_small_system(c);
  MomentEngine engine = MomentEngine::build(
      sys.grid, *sys.profile, c);
  double tol = default_tol_neutral(sys.grid);
  InitialData data = build_initial_data(
      sys.grid, std::static_pointer_cast<const BackgroundProfile>(sys.profile),
      engine, tol);

  SimulationState state;
  state.f = data.f;
  state.fields = data.fields;
  state.moments = data.moments;
  ScratchBuffers scratch;
  step_rvm(state, engine, c, 0.02, tol, scratch);
  CHECK(state.time == 0.02);
  CHECK(state.step == 1);

  SourceMoments after;
  engine.compute(state.f, after);
  std::vector<double> expected = gauss_e1(after.rho, sys.grid.dx, tol);
  REQUIRE(expected.size() == state.fields.e1.size());
  for (size_t i = 0; i < expected.size(); ++i)
    CHECK(state.fields.e1[i] == expected[i]);
}

TEST_CASE("characteristics retrace through a recorded history") {
  PhaseSpaceGrid grid = PhaseSpaceGrid::make(32, 5, 5, 4.0, 1.0, 1.0);
  RunHistory history;
  history.grid = grid;
  for (int r = 0; r <= 4; ++r) {
    HistoryRecord rec;
    rec.time = 0.25 * r;
    rec.e1.assign(grid.nx, 0.2);
    rec.e2.assign(grid.nx, 0.05);
    rec.b.assign(grid.nx, 0.1);
    rec.rho.assign(grid.nx, 0.0);
    rec.j1.assign(grid.nx, 0.0);
    rec.j2.assign(grid.nx, 0.0);
    rec.eps_tilde.assign(grid.nx, 0.0);
    rec.mom_tilde.assign(grid.nx, 0.0);
    rec.kplus.assign(grid.nx, 0.0);
    rec.kminus.assign(grid.nx, 0.0);
    history.records.push_back(std::move(rec));
  }
  SpeciesParams sp = species(-1.0, 1.0, "neg");
  SpeedOfLight c = SpeedOfLight::finite(8.0);

  CharacteristicTrace fwd =
      trace_characteristic(history, sp, c, 0.0, 1.0, -1.0, {0.4, -0.2}, 8);
  CHECK(!fwd.truncated);
  REQUIRE(!fwd.t.empty());
  CHECK(fwd.t.back() == doctest::Approx(1.0).epsilon(1e-12));

  CharacteristicTrace back = trace_characteristic(
      history, sp, c, 1.0, 0.0, fwd.x.back(), {fwd.p1.back(), fwd.p2.back()}, 8);
  CHECK(!back.truncated);
  CHECK(std::abs(back.x.back() - (-1.0)) <= 1e-8);
  CHECK(std::abs(back.p1.back() - 0.4) <= 1e-8);
  CHECK(std::abs(back.p2.back() - (-0.2)) <= 1e-8);
}
