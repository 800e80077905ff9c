#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "vmlimit/config.hpp"
#include "vmlimit/errors.hpp"
#include "vmlimit/initial_data.hpp"
#include "vmlimit/maxwell.hpp"
#include "vmlimit/profile.hpp"

using namespace vmlimit;

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Two-sided reference field, summed directly on both sides of each cell:
//   E(x_i) = 2 pi [sum_{k<i} rho_k dx + rho_i dx/2]
//          - 2 pi [rho_i dx/2 + sum_{k>i} rho_k dx]
std::vector<double> direct_two_sided(const std::vector<double>& rho, double dx) {
  int n = static_cast<int>(rho.size());
  std::vector<double> e(n);
  for (int i = 0; i < n; ++i) {
    long double left = 0.0L, right = 0.0L;
    for (int k = 0; k < i; ++k) left += rho[k];
    for (int k = i + 1; k < n; ++k) right += rho[k];
    left = (left + 0.5L * rho[i]) * dx;
    right = (right + 0.5L * rho[i]) * dx;
    e[i] = static_cast<double>(std::numbers::pi_v<long double> * 2.0L * (left - right));
  }
  return e;
}

std::vector<double> zero_mean_random(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> rho(n);
  long double s = 0.0L;
  for (double& r : rho) {
    r = u(gen);
    s += r;
  }
  double mean = static_cast<double>(s / n);
  for (double& r : rho) r -= mean;
  return rho;
}

std::vector<SpeciesParams> two_species(double q0, double m0, double q1, double m1) {
  SpeciesParams a, b;
  a.charge = q0;
  a.mass = m0;
  a.label = "a";
  b.charge = q1;
  b.mass = m1;
  b.label = "b";
  return {a, b};
}

}  // namespace

TEST_CASE("opposite charge blocks produce the exact piecewise linear field") {
  int nx = 64;
  double dx = 2.0 / nx;
  std::vector<double> rho(nx);
  for (int i = 0; i < nx; ++i) {
    double x = -1.0 + (i + 0.5) * dx;
    rho[i] = x < 0.0 ? -1.0 : 1.0;
  }
  std::vector<double> e1 = gauss_e1(rho, dx, 1e-10);
  for (int i = 0; i < nx; ++i) {
    double x = -1.0 + (i + 0.5) * dx;
    double expected = x < 0.0 ? -kFourPi * (x + 1.0) : kFourPi * (x - 1.0);
    CHECK(std::abs(e1[i] - expected) <= 4.0 * std::numeric_limits<double>::epsilon() * kFourPi);
  }
  // Field midpoint between the blocks: E1 -> -4 pi at x -> 0.
  CHECK(e1[nx / 2 - 1] < -kFourPi + 0.2);
  CHECK(e1[nx / 2] < -kFourPi + 0.2);
}

TEST_CASE("random zero mean charge matches the direct two sided summation") {
  int n = 200;
  double dx = 0.01;
  std::vector<double> rho = zero_mean_random(n, 42);
  std::vector<double> e1 = gauss_e1(rho, dx, 1e-10 * n);
  std::vector<double> ref = direct_two_sided(rho, dx);
  double scale = 1.0;
  for (double v : ref) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < n; ++i) CHECK(std::abs(e1[i] - ref[i]) <= 1e-12 * scale);
}

TEST_CASE("the gauss field is linear in the charge density") {
  int n = 160;
  double dx = 0.02;
  std::vector<double> ra = zero_mean_random(n, 3);
  std::vector<double> rb = zero_mean_random(n, 5);
  double alpha = 0.75, beta = -1.25;
  std::vector<double> combo(n);
  for (int i = 0; i < n; ++i) combo[i] = alpha * ra[i] + beta * rb[i];
  std::vector<double> ea = gauss_e1(ra, dx, 1.0);
  std::vector<double> eb = gauss_e1(rb, dx, 1.0);
  std::vector<double> ec = gauss_e1(combo, dx, 1.0);
  // Ulp budget against the field scale: the running charge sums carry the
  // full field magnitude even where the pointwise value nearly cancels.
  double scale = 1.0;
  for (int i = 0; i < n; ++i)
    scale = std::max({scale, std::abs(ea[i]), std::abs(eb[i]), std::abs(ec[i])});
  double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < n; ++i) {
    double lhs = ec[i];
    double rhs = alpha * ea[i] + beta * eb[i];
    CHECK(std::abs(lhs - rhs) <= 8.0 * eps * scale);
  }
}

TEST_CASE("zero charge gives the exactly zero field") {
  std::vector<double> rho(50, 0.0);
  std::vector<double> e1 = gauss_e1(rho, 0.1, 1e-10);
  for (double v : e1) CHECK(v == 0.0);
}

TEST_CASE("a net charge is rejected") {
  std::vector<double> rho(20, 1.0);
  CHECK_THROWS_AS(gauss_e1(rho, 0.1, 1e-10), NeutralityError);
}

TEST_CASE("discrete gauss law converges at second order against the smooth density") {
  auto worst_face_gap = [](int nx) {
    double dx = 2.0 / nx;
    std::vector<double> rho(nx);
    for (int i = 0; i < nx; ++i) {
      double x = -1.0 + (i + 0.5) * dx;
      rho[i] = std::sin(2.0 * std::numbers::pi * x);
    }
    std::vector<double> e1 = gauss_e1(rho, dx, 1e-8);
    double worst = 0.0;
    for (int i = 0; i + 1 < nx; ++i) {
      double x_face = -1.0 + (i + 1.0) * dx;
      double lhs = (e1[i + 1] - e1[i]) / dx;
      double rhs = kFourPi * std::sin(2.0 * std::numbers::pi * x_face);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
  };
  double coarse = worst_face_gap(64);
  double fine = worst_face_gap(128);
  CHECK(coarse <= 0.5);  // C dx^2 with a modest constant
  CHECK(fine <= coarse / 3.0);
}

TEST_CASE("the field vanishes identically outside the charge support") {
  int nx = 80;
  double dx = 4.0 / nx;  // domain [-2, 2]
  std::vector<double> rho(nx, 0.0);
  for (int i = 0; i < nx; ++i) {
    double x = -2.0 + (i + 0.5) * dx;
    if (std::abs(x) < 0.5) rho[i] = x < 0.0 ? 1.0 : -1.0;
  }
  std::vector<double> e1 = gauss_e1(rho, dx, 1e-10);
  bool saw_nonzero = false;
  for (int i = 0; i < nx; ++i) {
    double x = -2.0 + (i + 0.5) * dx;
    if (std::abs(x) > 0.5) {
      CHECK(e1[i] == 0.0);
    } else {
      saw_nonzero = saw_nonzero || e1[i] != 0.0;
    }
  }
  CHECK(saw_nonzero);
}

TEST_CASE("baseline initial data passes every validation check") {
  RunConfig cfg = RunConfig::baseline();
  PhaseSpaceGrid grid = cfg.make_grid();
  auto profile = std::make_shared<BackgroundProfile>(
      BackgroundProfile::build(cfg.profile, cfg.species, grid));
  MomentEngine engine = MomentEngine::build(grid, profile, cfg.c);
  double tol = default_tol_neutral(grid);
  InitialData data = build_initial_data(grid, profile, engine, tol);
  ValidationReport report = validate_initial_data(data, grid, engine, tol);
  for (const ValidationItem& item : report.items) {
    INFO(item.name << ": " << item.value << " vs " << item.limit);
    CHECK(item.pass);
  }
  CHECK(report.items.size() >= 6);
  CHECK(report.all_pass());
  CHECK(data.max_f0 > 0.0);
  // The initial distribution is nowhere negative.
  double fmin = 0.0;
  for (const auto& sp : data.f.values)
    for (double v : sp) fmin = std::min(fmin, v);
  CHECK(fmin == 0.0);
}

TEST_CASE("chargeless profiles skip the neutrality projection") {
  RunConfig cfg = RunConfig::baseline();
  cfg.nx = 32;
  cfg.np1 = 17;
  cfg.np2 = 17;
  cfg.profile.name = "free-streaming";
  cfg.species = two_species(0.0, 1.0, 0.0, 2.0);
  PhaseSpaceGrid grid = cfg.make_grid();
  auto profile = std::make_shared<BackgroundProfile>(
      BackgroundProfile::build(cfg.profile, cfg.species, grid));
  MomentEngine engine = MomentEngine::build(grid, profile, cfg.c);
  InitialData data = build_initial_data(grid, profile, engine, default_tol_neutral(grid));
  CHECK(data.projection_strength == 0.0);
  for (double v : data.moments.rho) CHECK(v == 0.0);
  for (double v : data.fields.e1) CHECK(v == 0.0);
}
