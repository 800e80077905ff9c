#include "vmlimit/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vmlimit/errors.hpp"

namespace vmlimit {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFourPi = 4.0 * std::numbers::pi;
}  // namespace

bool ValidationReport::all_pass() const {
  for (const auto& it : items)
    if (!it.pass) return false;
  return true;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& it : items) {
    os << (it.pass ? "pass " : "FAIL ") << it.name << "  value=" << it.value
       << "  limit=" << it.limit;
    if (!it.detail.empty()) os << "  (" << it.detail << ")";
    os << "\n";
  }
  return os.str();
}

double default_tol_neutral(const PhaseSpaceGrid& grid) {
  return 1e-10 * static_cast<double>(grid.cells());
}

std::vector<double> gauss_e1(const std::vector<double>& rho, double dx,
                             double tol_neutral) {
  size_t n = rho.size();
  long double total = 0.0L;
  for (double r : rho) total += static_cast<long double>(r) * dx;
  double s = static_cast<double>(total);
  if (std::abs(s) > tol_neutral) {
    std::ostringstream os;
    os << "gauss_e1: total charge " << s << " exceeds neutrality tolerance "
       << tol_neutral;
    throw NeutralityError(os.str());
  }

  std::vector<double> e1(n, 0.0);
  size_t lo = n, hi = 0;
  for (size_t i = 0; i < n; ++i)
    if (rho[i] != 0.0) {
      if (lo == n) lo = i;
      hi = i;
    }
  if (lo == n) return e1;  // no charge anywhere

  // Midpoint cumulative integral over the support band, anchored at cell
  // centers: the running sum through cell i-1 plus half of cell i is
  // int_{-inf}^{x_i} rho, so a piecewise-constant rho reproduces its exact
  // piecewise-linear field. Cells outside the band keep their exact zeros;
  // the right-edge mismatch 2 pi s is round-off after projection.
  long double acc = 0.0L;
  for (size_t i = lo; i <= hi; ++i) {
    long double half = 0.5L * static_cast<long double>(rho[i]) * dx;
    long double mid = acc + half;
    acc += static_cast<long double>(rho[i]) * dx;
    e1[i] = static_cast<double>(2.0L * kTwoPi * mid) - kTwoPi * s;
  }
  return e1;
}

InitialData build_initial_data(const PhaseSpaceGrid& grid,
                               std::shared_ptr<const BackgroundProfile> profile,
                               const MomentEngine& engine, double tol_neutral) {
  InitialData data;
  data.f = DistributionField::from_profile(grid, profile);
  data.fields.resize(static_cast<size_t>(grid.nx));
  engine.compute(data.f, data.moments);

  // Remove the residual discrete charge with a perturbation-shaped bite out
  // of species 0. Two passes take the residual down to round-off.
  const ProfileParams& pp = profile->params();
  const std::vector<double>& table0 = profile->background_table(0);
  double e0 = profile->species()[0].charge;
  for (int pass = 0; pass < 2; ++pass) {
    long double total = 0.0L;
    for (double r : data.moments.rho) total += static_cast<long double>(r) * grid.dx;
    double s = static_cast<double>(total);
    if (s == 0.0) break;

    long double wsum = 0.0L, msum = 0.0L;
    for (int i = 0; i < grid.nx; ++i) wsum += profile->perturbation_shape(grid.x_center(i));
    for (size_t k = 0; k < table0.size(); ++k)
      msum += static_cast<long double>(table0[k]) * engine.tables[0].quad_w[k];
    double denom = e0 * static_cast<double>(wsum) * static_cast<double>(msum) * grid.dx;
    if (denom == 0.0) break;  // no perturbation support to project onto

    double lambda = s / denom;
    std::int64_t plane = grid.plane();
    for (int i = 0; i < grid.nx; ++i) {
      double w = profile->perturbation_shape(grid.x_center(i));
      if (w == 0.0) continue;
      double* cell = data.f.values[0].data() + static_cast<size_t>(i) * plane;
      for (std::int64_t k = 0; k < plane; ++k)
        cell[k] -= lambda * w * table0[static_cast<size_t>(k)];
    }
    data.projection_strength += std::abs(lambda);
    engine.compute(data.f, data.moments);
  }

  double fmin = 0.0, fmax = 0.0;
  for (const auto& v : data.f.values)
    for (double x : v) {
      if (x < fmin) fmin = x;
      if (x > fmax) fmax = x;
    }
  if (fmin < 0.0) {
    std::ostringstream os;
    os << "initial distribution dips to " << fmin
       << "; perturbation amplitudes are too large";
    throw ConfigError(os.str());
  }
  data.max_f0 = fmax;

  long double scale = 0.0L;
  for (double r : data.moments.rho) scale += std::abs(r) * grid.dx;
  data.charge_scale = static_cast<double>(scale);

  data.fields.e1 = gauss_e1(data.moments.rho, grid.dx, tol_neutral);
  for (int i = 0; i < grid.nx; ++i) {
    double x = grid.x_center(i);
    data.fields.e2[i] = profile->initial_e2(x);
    data.fields.b[i] = profile->initial_b(x);
  }
  data.fields.update_runmax();
  (void)pp;
  return data;
}

ValidationReport validate_initial_data(const InitialData& data,
                                       const PhaseSpaceGrid& grid,
                                       const MomentEngine& engine,
                                       double tol_neutral) {
  ValidationReport rep;
  const BackgroundProfile& profile = *data.f.background;
  double r0 = profile.params().r0;
  double q0 = profile.params().q0;
  int ns = profile.n_species();

  {  // background momentum support inside Q0
    double worst = 0.0;
    for (int s = 0; s < ns; ++s) {
      const std::vector<double>& table = profile.background_table(s);
      for (int j1 = 0; j1 < grid.np1; ++j1)
        for (int j2 = 0; j2 < grid.np2; ++j2)
          if (table[static_cast<size_t>(j1) * grid.np2 + j2] != 0.0)
            worst = std::max(worst, std::hypot(grid.p1_node(j1), grid.p2_node(j2)));
    }
    rep.items.push_back({"momentum-support", worst <= q0, worst, q0,
                         "max |p| with background > 0"});
  }

  {  // background charge neutrality
    double v = std::abs(engine.rho_bg);
    rep.items.push_back({"background-neutrality", v <= tol_neutral, v,
                         tol_neutral, "sum_a e int F dp"});
  }

  {  // background Newtonian current cancellation, component-wise
    double c1 = 0.0, c2 = 0.0;
    for (int s = 0; s < ns; ++s) {
      const std::vector<double>& table = profile.background_table(s);
      const KinematicsTable& t = engine.tables[s];
      double m = t.species.mass, q = t.species.charge;
      double s1 = 0.0, s2 = 0.0;
      for (int j1 = 0; j1 < grid.np1; ++j1)
        for (int j2 = 0; j2 < grid.np2; ++j2) {
          size_t k = static_cast<size_t>(j1) * grid.np2 + j2;
          double fw = table[k] * t.quad_w[k];
          s1 += grid.p1_node(j1) / m * fw;
          s2 += grid.p2_node(j2) / m * fw;
        }
      c1 += q * s1;
      c2 += q * s2;
    }
    double v = std::max(std::abs(c1), std::abs(c2));
    rep.items.push_back({"background-current", v <= tol_neutral, v, tol_neutral,
                         "sum_a e int F p/m dp"});
  }

  {  // perturbation confined to |x| <= R0
    double worst = 0.0;
    std::int64_t plane = grid.plane();
    for (int s = 0; s < ns; ++s) {
      const std::vector<double>& table = profile.background_table(s);
      for (int i = 0; i < grid.nx; ++i) {
        const double* cell =
            data.f.values[s].data() + static_cast<size_t>(i) * plane;
        for (std::int64_t k = 0; k < plane; ++k)
          if (cell[k] != table[static_cast<size_t>(k)]) {
            worst = std::max(worst, std::abs(grid.x_center(i)));
            break;
          }
      }
    }
    rep.items.push_back({"perturbation-confinement", worst <= r0, worst, r0,
                         "max |x| with f0 != F"});
  }

  {  // zero total perturbed charge
    long double total = 0.0L;
    for (double r : data.moments.rho) total += static_cast<long double>(r) * grid.dx;
    double v = std::abs(static_cast<double>(total));
    rep.items.push_back({"perturbed-charge", v <= tol_neutral, v, tol_neutral,
                         "sum_a e int (f0 - F)"});
  }

  {  // staggered discrete Gauss law, exact by construction
    const std::vector<double>& rho = data.moments.rho;
    double worst = 0.0;
    for (int i = 0; i + 1 < grid.nx; ++i) {
      double lhs = (data.fields.e1[i + 1] - data.fields.e1[i]) / grid.dx;
      double avg = 0.5 * (rho[i] + rho[i + 1]);
      worst = std::max(worst, std::abs(lhs - kFourPi * avg));
    }
    double scale = 0.0;
    for (double r : rho) scale = std::max(scale, std::abs(r));
    double limit = 1e-11 * std::max(1.0, kFourPi * scale) / grid.dx;
    rep.items.push_back({"discrete-gauss", worst <= limit, worst, limit,
                         "staggered dE1/dx vs 4 pi face-average rho"});
  }

  {  // E1 vanishes outside the charge support, exactly
    double worst = 0.0;
    for (int i = 0; i < grid.nx; ++i)
      if (std::abs(grid.x_center(i)) >= r0)
        worst = std::max(worst, std::abs(data.fields.e1[i]));
    rep.items.push_back(
        {"e1-outside-support", worst == 0.0, worst, 0.0, "|x| >= R0"});
  }

  {  // charge projection stayed a small correction
    rep.items.push_back({"projection-strength",
                         data.projection_strength <= 0.1,
                         data.projection_strength, 0.1,
                         "amplitude removed for discrete neutrality"});
  }

  {  // nonnegative initial distribution
    double fmin = 0.0;
    for (const auto& v : data.f.values)
      for (double x : v) fmin = std::min(fmin, x);
    rep.items.push_back({"f0-nonnegative", fmin >= 0.0, fmin, 0.0, ""});
  }

  return rep;
}

}  // namespace vmlimit
