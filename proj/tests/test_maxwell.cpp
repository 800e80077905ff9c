#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "vmlimit/distribution.hpp"
#include "vmlimit/errors.hpp"
#include "vmlimit/fields.hpp"
#include "vmlimit/maxwell.hpp"
#include "vmlimit/profile.hpp"

using namespace vmlimit;

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

SpeciesParams species(double charge, double mass, const char* label) {
  SpeciesParams sp;
  sp.charge = charge;
  sp.mass = mass;
  sp.label = label;
  return sp;
}

// Manufactured transverse current, smooth and effectively compact.
double source_a(double t) { return std::cos(3.0 * t); }
double source_w(double x) { return std::exp(-4.0 * x * x); }
double source_j2(double t, double x) { return source_a(t) * source_w(x); }

// G+(T, x) = -4 pi int_0^T j2(s, x - c (T - s)) ds from a zero initial field,
// by fine Simpson quadrature along the incoming ray.
double ray_integral_gplus(double T, double x, double c) {
  int n = 4000;  // even
  double h = T / n;
  long double acc = 0.0L;
  for (int k = 0; k <= n; ++k) {
    double s = k * h;
    double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * source_j2(s, x - c * (T - s));
  }
  return static_cast<double>(-kFourPi * acc * h / 3.0L);
}

// March the field update to time T with exact mid-step sources on the grid.
FieldState march_transverse(const PhaseSpaceGrid& grid, double c_val, double T,
                            int steps) {
  FieldState fields;
  fields.resize(static_cast<size_t>(grid.nx));
  SpeedOfLight c = SpeedOfLight::finite(c_val);
  double dt = T / steps;
  std::vector<double> j2(grid.nx);
  for (int n = 0; n < steps; ++n) {
    double t_mid = (n + 0.5) * dt;
    for (int i = 0; i < grid.nx; ++i) j2[i] = source_j2(t_mid, grid.x_center(i));
    update_transverse(fields, j2, grid, c, dt);
  }
  return fields;
}

double march_error(int nx, int steps) {
  PhaseSpaceGrid grid = PhaseSpaceGrid::make(nx, 5, 5, 4.0, 1.0, 1.0);
  double c_val = 1.0, T = 0.4;
  FieldState fields = march_transverse(grid, c_val, T, steps);
  double worst = 0.0;
  for (int i = 0; i < grid.nx; ++i) {
    double x = grid.x_center(i);
    double gp = fields.gplus(i);
    worst = std::max(worst, std::abs(gp - ray_integral_gplus(T, x, c_val)));
  }
  return worst;
}

}  // namespace

TEST_CASE("transverse transport at integer courant number is an exact shift") {
  PhaseSpaceGrid grid = PhaseSpaceGrid::make(64, 5, 5, 8.0, 1.0, 1.0);
  // c dt / dx = 5 * 0.1 / 0.25 = 2 cells exactly.
  SpeedOfLight c = SpeedOfLight::finite(5.0);
  double dt = 0.1;

  std::mt19937 gen(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FieldState fields;
  fields.resize(64);
  for (int i = 8; i < 56; ++i) {
    fields.e2[i] = u(gen);
    fields.b[i] = u(gen);
  }
  std::vector<double> gp(64), gm(64);
  for (int i = 0; i < 64; ++i) {
    gp[i] = fields.gplus(i);
    gm[i] = fields.gminus(i);
  }

  std::vector<double> j2(64, 0.0);
  update_transverse(fields, j2, grid, c, dt);

  for (int i = 0; i < 64; ++i) {
    double gp_in = i >= 2 ? gp[i - 2] : 0.0;   // zero inflow from the left
    double gm_in = i + 2 < 64 ? gm[i + 2] : 0.0;
    CHECK(fields.e2[i] == 0.5 * (gp_in + gm_in));
    CHECK(fields.b[i] == 0.5 * (gp_in - gm_in));
  }
}

TEST_CASE("a manufactured current matches its ray integral under refinement") {
  // Error model: O(dt^2) from the single mid-ray source sample plus
  // O(dx^4/dt) from the per-step interpolation; parameters keep the dt term
  // dominant, so halving dt should quarter the error.
  double coarse = march_error(256, 4);   // dt = 0.1, dx = 1/32
  double fine = march_error(256, 8);     // dt = 0.05
  CHECK(coarse < 0.1);
  double ratio = coarse / fine;
  CHECK(ratio > 2.5);
  CHECK(ratio < 6.5);
}

TEST_CASE("moments vanish bitwise wherever f still equals the background") {
  PhaseSpaceGrid grid = PhaseSpaceGrid::make(32, 17, 17, 8.0, 3.6, 3.6);
  ProfileParams pp;
  pp.name = "neutral-two-species";
  pp.r0 = 1.0;
  pp.q0 = 2.0;
  pp.amplitude = 0.02;
  pp.pert_amp = 0.8;
  pp.pert_p2 = 0.1;
  std::vector<SpeciesParams> sp{species(-1.0, 1.0, "neg"), species(1.0, 2.0, "pos")};
  auto profile = std::make_shared<const BackgroundProfile>(
      BackgroundProfile::build(pp, sp, grid));
  SpeedOfLight c = SpeedOfLight::finite(8.0);
  MomentEngine engine = MomentEngine::build(grid, *profile, c);

  DistributionField f = DistributionField::from_profile(grid, profile);
  SourceMoments moments;
  engine.compute(f, moments);

  bool saw_charge = false, saw_current = false;
  for (int i = 0; i < grid.nx; ++i) {
    if (std::abs(grid.x_center(i)) > pp.r0) {
      CHECK(moments.rho[i] == 0.0);
      CHECK(moments.j1[i] == 0.0);
      CHECK(moments.j2[i] == 0.0);
    } else {
      saw_charge = saw_charge || moments.rho[i] != 0.0;
      saw_current = saw_current || moments.j2[i] != 0.0;
    }
  }
  CHECK(saw_charge);
  CHECK(saw_current);
}

TEST_CASE("the ampere residual vanishes at second order on exact series") {
  // E1(t, x) = sin(t) g(x) with j1 = -cos(t) g(x) / 4pi satisfies the exact
  // law; the residual is then purely the centered-difference error
  // |(sin(t+dt) - sin(t-dt)) / 2dt - cos(t)| ~ dt^2/6.
  int nx = 20;
  std::vector<double> g(nx);
  for (int i = 0; i < nx; ++i) g[i] = std::sin(0.4 * i) + 1.2;

  auto build = [&](double dt, int nt) {
    std::pair<std::vector<std::vector<double>>, std::vector<std::vector<double>>> s;
    for (int n = 0; n < nt; ++n) {
      double t = n * dt;
      std::vector<double> e1(nx), j1(nx);
      for (int i = 0; i < nx; ++i) {
        e1[i] = std::sin(t) * g[i];
        j1[i] = -std::cos(t) * g[i] / kFourPi;
      }
      s.first.push_back(std::move(e1));
      s.second.push_back(std::move(j1));
    }
    return s;
  };

  auto coarse = build(0.1, 9);
  auto fine = build(0.05, 17);
  double rc = ampere_residual(coarse.first, coarse.second, 0.1);
  double rf = ampere_residual(fine.first, fine.second, 0.05);
  CHECK(rc < 5e-3);
  CHECK(rc / rf > 3.2);
  CHECK(rc / rf < 4.8);

  // Fewer than three levels cannot form a centered difference.
  std::vector<std::vector<double>> two(2, std::vector<double>(nx, 0.0));
  CHECK_THROWS_AS(ampere_residual(two, two, 0.1), SolverError);
}
