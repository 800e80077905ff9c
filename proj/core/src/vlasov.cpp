#include "vmlimit/vlasov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vmlimit/errors.hpp"
#include "vmlimit/initial_data.hpp"
#include "vmlimit/interpolation.hpp"

namespace vmlimit {

namespace {

[[noreturn]] void throw_cfl(const char* stage, double speed, double dt,
                            double allowed) {
  std::ostringstream os;
  os << stage << ": displacement " << speed * dt << " (speed " << speed
     << ", dt " << dt << ") exceeds the stencil guard " << allowed;
  throw CflError(os.str());
}

// Backward-traced foot of one midpoint step of the momentum equations
//   dp1/ds = e (E1 + c^-1 V2 B),  dp2/ds = e (E2 - c^-1 V1 B)
// with fields frozen. v is the velocity at the start point.
inline Vec2 rk2_foot(Vec2 p, Vec2 v, double e1, double e2, double b, double e,
                     double cinv, double dt, const SpeciesParams& sp,
                     SpeedOfLight c) {
  double a1 = e * (e1 + cinv * v[1] * b);
  double a2 = e * (e2 - cinv * v[0] * b);
  Vec2 ph{p[0] - 0.5 * dt * a1, p[1] - 0.5 * dt * a2};
  Vec2 vh = kinematics::velocity(ph, sp, c);
  double b1 = e * (e1 + cinv * vh[1] * b);
  double b2 = e * (e2 - cinv * vh[0] * b);
  return {p[0] - dt * b1, p[1] - dt * b2};
}

}  // namespace

Vec2 kick_foot(Vec2 p, double e1, double e2, double b,
               const SpeciesParams& sp, SpeedOfLight c, double dt) {
  Vec2 v = kinematics::velocity(p, sp, c);
  return rk2_foot(p, v, e1, e2, b, sp.charge, c.inverse(), dt, sp, c);
}

void advect_x(DistributionField& f, const std::vector<KinematicsTable>& tables,
              double dt, ScratchBuffers& scratch) {
  const PhaseSpaceGrid& grid = f.grid;
  int nx = grid.nx;
  std::int64_t plane = grid.plane();
  double guard = (grid.nghost - 1) * grid.dx;

  scratch.line_in.resize(nx);
  scratch.line_out.resize(nx);

  int ng = grid.nghost;

  for (int s = 0; s < f.n_species(); ++s) {
    const KinematicsTable& ts = tables[s];
    if (ts.max_abs_v1 * std::abs(dt) > guard)
      throw_cfl("advect_x", ts.max_abs_v1, dt, guard);
    const std::vector<double>& bg = f.background->background_table(s);
    double* data = f.values[s].data();

    for (std::int64_t k = 0; k < plane; ++k) {
      double v1 = ts.v1[k];
      double shift = v1 * dt / grid.dx;
      double bgv = bg[static_cast<size_t>(k)];

      long double pre = 0.0L;
      for (int i = 0; i < nx; ++i) {
        double val = data[static_cast<std::int64_t>(i) * plane + k];
        scratch.line_in[i] = val;
        if (i >= ng && i < nx - ng) pre += val;
      }
      interp::shift_line_septic(scratch.line_in.data(), nx, shift, bgv, bgv,
                                scratch.line_out.data());
      // Ghost bands stay at the background.  Negative interpolants are
      // floored at zero, then the interior line sum is rescaled back to its
      // pre-shift value, so each species keeps its mass and positivity
      // without a stencil-hull limiter that would erode smooth extrema.
      for (int i = 0; i < ng; ++i) {
        scratch.line_out[i] = bgv;
        scratch.line_out[nx - 1 - i] = bgv;
      }
      long double post = 0.0L;
      for (int i = ng; i < nx - ng; ++i) {
        if (scratch.line_out[i] < 0.0) scratch.line_out[i] = 0.0;
        post += scratch.line_out[i];
      }
      if (post != pre && post > 0.0L) {
        double factor = static_cast<double>(pre / post);
        for (int i = ng; i < nx - ng; ++i) scratch.line_out[i] *= factor;
      }
      for (int i = 0; i < nx; ++i)
        data[static_cast<std::int64_t>(i) * plane + k] = scratch.line_out[i];
    }
  }
}

namespace {

void kick_p_limit(DistributionField& f, const FieldState& fields,
                  const std::vector<KinematicsTable>& tables, double dt,
                  ScratchBuffers& scratch) {
  const PhaseSpaceGrid& grid = f.grid;
  int np1 = grid.np1, np2 = grid.np2;
  double guard = (grid.nghost - 1) * grid.dp1;

  scratch.line_in.resize(np1);
  scratch.line_out.resize(np1);
  scratch.line_lo.resize(np1);
  scratch.line_hi.resize(np1);

  for (int s = 0; s < f.n_species(); ++s) {
    double e = tables[s].species.charge;
    double* data = f.values[s].data();
    for (int ix = grid.nghost; ix < grid.nx - grid.nghost; ++ix) {
      double e1 = fields.e1[ix];
      if (std::isnan(e1))
        throw SolverError("kick_p: NaN E1 at x index " + std::to_string(ix));
      double a1 = e * e1;
      if (a1 == 0.0) continue;  // exact identity, momentum untouched
      if (std::abs(a1) * std::abs(dt) > guard)
        throw_cfl("kick_p", std::abs(a1), dt, guard);
      double shift = a1 * dt / grid.dp1;

      double* cell = data + static_cast<std::int64_t>(ix) * grid.plane();
      for (int j2 = 0; j2 < np2; ++j2) {
        long double pre = 0.0L;
        for (int j1 = 0; j1 < np1; ++j1) {
          double val = cell[static_cast<std::int64_t>(j1) * np2 + j2];
          scratch.line_in[j1] = val;
          pre += val;
        }
        interp::shift_line_clamped(scratch.line_in.data(), np1, shift, 0.0, 0.0,
                                   scratch.line_out.data(),
                                   scratch.line_lo.data(),
                                   scratch.line_hi.data());
        interp::restore_sum(scratch.line_out.data(), scratch.line_lo.data(),
                            scratch.line_hi.data(), np1,
                            static_cast<double>(pre));
        for (int j1 = 0; j1 < np1; ++j1)
          cell[static_cast<std::int64_t>(j1) * np2 + j2] = scratch.line_out[j1];
      }
    }
  }
  f.refill_ghost_bands();
}

void kick_p_relativistic(DistributionField& f, const FieldState& fields,
                         const std::vector<KinematicsTable>& tables,
                         SpeedOfLight c, double dt, ScratchBuffers& scratch) {
  const PhaseSpaceGrid& grid = f.grid;
  int np1 = grid.np1, np2 = grid.np2;
  std::int64_t plane = grid.plane();
  double guard1 = (grid.nghost - 1) * grid.dp1;
  double guard2 = (grid.nghost - 1) * grid.dp2;
  double cinv = c.inverse();

  scratch.plane_in.resize(plane);
  scratch.plane_out.resize(plane);
  scratch.plane_lo.resize(plane);
  scratch.plane_hi.resize(plane);

  for (int s = 0; s < f.n_species(); ++s) {
    const KinematicsTable& ts = tables[s];
    double e = ts.species.charge;
    double* data = f.values[s].data();

    for (int ix = grid.nghost; ix < grid.nx - grid.nghost; ++ix) {
      double e1 = fields.e1[ix], e2 = fields.e2[ix], b = fields.b[ix];
      if (std::isnan(e1) || std::isnan(e2) || std::isnan(b))
        throw SolverError("kick_p: NaN field at x index " + std::to_string(ix));
      if (e1 == 0.0 && e2 == 0.0 && b == 0.0) continue;  // zero force, identity

      double* cell = data + static_cast<std::int64_t>(ix) * plane;
      long double pre = 0.0L;
      for (std::int64_t k = 0; k < plane; ++k) {
        scratch.plane_in[k] = cell[k];
        pre += cell[k];
      }

      for (int j1 = 0; j1 < np1; ++j1) {
        for (int j2 = 0; j2 < np2; ++j2) {
          std::int64_t k = static_cast<std::int64_t>(j1) * np2 + j2;
          Vec2 p{grid.p1_node(j1), grid.p2_node(j2)};
          Vec2 v{ts.v1[k], ts.v2[k]};
          Vec2 foot = rk2_foot(p, v, e1, e2, b, e, cinv, dt, ts.species, c);
          if (std::isnan(foot[0]) || std::isnan(foot[1]))
            throw SolverError("kick_p: NaN characteristic foot at x index " +
                              std::to_string(ix));
          double d1 = foot[0] - p[0], d2 = foot[1] - p[1];
          if (std::abs(d1) > guard1) throw_cfl("kick_p", std::abs(d1 / dt), dt, guard1);
          if (std::abs(d2) > guard2) throw_cfl("kick_p", std::abs(d2 / dt), dt, guard2);

          double g1 = foot[0] / grid.dp1 + 0.5 * (np1 - 1);
          double g2 = foot[1] / grid.dp2 + 0.5 * (np2 - 1);
          double b1f = std::floor(g1), b2f = std::floor(g2);
          double s1 = g1 - b1f, s2 = g2 - b2f;
          if (s1 >= 1.0) { s1 -= 1.0; b1f += 1.0; }
          if (s2 >= 1.0) { s2 -= 1.0; b2f += 1.0; }
          int base1 = static_cast<int>(b1f), base2 = static_cast<int>(b2f);
          auto w1 = interp::cubic_weights(s1);
          auto w2 = interp::cubic_weights(s2);

          double val = 0.0, lo = 0.0, hi = 0.0;
          bool first = true;
          for (int a = 0; a < 4; ++a) {
            int r = base1 - 1 + a;
            double row = 0.0;
            for (int bcol = 0; bcol < 4; ++bcol) {
              int col = base2 - 1 + bcol;
              double fav = 0.0;
              if (r >= 0 && r < np1 && col >= 0 && col < np2)
                fav = scratch.plane_in[static_cast<std::int64_t>(r) * np2 + col];
              row += w2[bcol] * fav;
              if (first) { lo = hi = fav; first = false; }
              else { lo = std::min(lo, fav); hi = std::max(hi, fav); }
            }
            val += w1[a] * row;
          }
          scratch.plane_out[k] = std::clamp(val, lo, hi);
          scratch.plane_lo[k] = lo;
          scratch.plane_hi[k] = hi;
        }
      }
      interp::restore_sum(scratch.plane_out.data(), scratch.plane_lo.data(),
                          scratch.plane_hi.data(), plane,
                          static_cast<double>(pre));
      std::copy(scratch.plane_out.begin(), scratch.plane_out.end(), cell);
    }
  }
  f.refill_ghost_bands();
}

}  // namespace

void kick_p(DistributionField& f, const FieldState& fields,
            const std::vector<KinematicsTable>& tables, SpeedOfLight c,
            double dt, ScratchBuffers& scratch) {
  if (c.is_infinite())
    kick_p_limit(f, fields, tables, dt, scratch);
  else
    kick_p_relativistic(f, fields, tables, c, dt, scratch);
}

void step_rvm(SimulationState& state, const MomentEngine& engine,
              SpeedOfLight c, double dt, double tol_neutral,
              ScratchBuffers& scratch) {
  const PhaseSpaceGrid& grid = state.f.grid;

  advect_x(state.f, engine.tables, 0.5 * dt, scratch);            // A
  engine.compute(state.f, state.moments);                         // B
  update_transverse(state.fields, state.moments.j2, grid, c, dt); // C
  state.fields.e1 = gauss_e1(state.moments.rho, grid.dx, tol_neutral);
  state.fields.update_runmax();
  kick_p(state.f, state.fields, engine.tables, c, dt, scratch);   // D
  advect_x(state.f, engine.tables, 0.5 * dt, scratch);            // E

  engine.compute(state.f, state.moments);  // refresh so Gauss holds at exit
  state.fields.e1 = gauss_e1(state.moments.rho, grid.dx, tol_neutral);
  state.time += dt;
  state.step += 1;
}

void step_vp(SimulationState& state, const MomentEngine& engine, double dt,
             double tol_neutral, ScratchBuffers& scratch) {
  const PhaseSpaceGrid& grid = state.f.grid;
  SpeedOfLight c = SpeedOfLight::infinite();

  advect_x(state.f, engine.tables, 0.5 * dt, scratch);
  engine.compute(state.f, state.moments);
  state.fields.e1 = gauss_e1(state.moments.rho, grid.dx, tol_neutral);
  state.fields.update_runmax();
  kick_p(state.f, state.fields, engine.tables, c, dt, scratch);
  advect_x(state.f, engine.tables, 0.5 * dt, scratch);

  engine.compute(state.f, state.moments);
  state.fields.e1 = gauss_e1(state.moments.rho, grid.dx, tol_neutral);
  state.time += dt;
  state.step += 1;
}

CharacteristicTrace trace_characteristic(const RunHistory& history,
                                         const SpeciesParams& species,
                                         SpeedOfLight c, double t_start,
                                         double t_end, double x0, Vec2 p0,
                                         int steps_per_record) {
  CharacteristicTrace tr;
  double span = t_end - t_start;
  double rec_dt = std::abs(span);
  if (history.records.size() >= 2)
    rec_dt = (history.t_end() - history.t_begin()) /
             static_cast<double>(history.records.size() - 1);
  int nsteps = 1;
  if (rec_dt > 0.0 && span != 0.0)
    nsteps = std::max(1, static_cast<int>(std::ceil(std::abs(span) / rec_dt)) *
                             steps_per_record);
  double h = span / nsteps;
  double cinv = c.inverse();
  bool limit = c.is_infinite();
  double edge = history.grid.x_max - 2.0 * history.grid.dx;

  struct Rate {
    double x, p1, p2;
  };
  auto deriv = [&](double t, double x, Vec2 p) -> Rate {
    Vec2 v = kinematics::velocity(p, species, c);
    double e1 = history.e1_at(t, x);
    if (limit) return {v[0], species.charge * e1, 0.0};
    double e2 = history.e2_at(t, x);
    double b = history.b_at(t, x);
    return {v[0], species.charge * (e1 + cinv * v[1] * b),
            species.charge * (e2 - cinv * v[0] * b)};
  };

  double t = t_start, x = x0;
  Vec2 p = p0;
  tr.t.push_back(t);
  tr.x.push_back(x);
  tr.p1.push_back(p[0]);
  tr.p2.push_back(p[1]);
  if (std::abs(x) > edge) tr.truncated = true;

  for (int n = 0; n < nsteps; ++n) {
    Rate k1 = deriv(t, x, p);
    Rate k2 = deriv(t + 0.5 * h, x + 0.5 * h * k1.x,
                    {p[0] + 0.5 * h * k1.p1, p[1] + 0.5 * h * k1.p2});
    Rate k3 = deriv(t + 0.5 * h, x + 0.5 * h * k2.x,
                    {p[0] + 0.5 * h * k2.p1, p[1] + 0.5 * h * k2.p2});
    Rate k4 = deriv(t + h, x + h * k3.x,
                    {p[0] + h * k3.p1, p[1] + h * k3.p2});
    x += h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    p[0] += h / 6.0 * (k1.p1 + 2.0 * k2.p1 + 2.0 * k3.p1 + k4.p1);
    p[1] += h / 6.0 * (k1.p2 + 2.0 * k2.p2 + 2.0 * k3.p2 + k4.p2);
    t = t_start + (n + 1) * h;
    tr.t.push_back(t);
    tr.x.push_back(x);
    tr.p1.push_back(p[0]);
    tr.p2.push_back(p[1]);
    if (std::abs(x) > edge) tr.truncated = true;
  }
  return tr;
}

}  // namespace vmlimit
