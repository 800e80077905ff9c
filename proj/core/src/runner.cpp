#include "vmlimit/runner.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "vmlimit/errors.hpp"
#include "vmlimit/maxwell.hpp"
#include "vmlimit/snapshot.hpp"

namespace vmlimit {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct StepScan {
  double fmin = 0.0, fmax = 0.0;
  std::vector<double> pert_mass;  // per species, quad-weighted, times dx
  std::vector<double> pert_l1;    // same weights on |f - F|, scale for drift
};

StepScan scan_distribution(const DistributionField& f,
                           const MomentEngine& engine) {
  StepScan out;
  out.pert_mass.resize(f.n_species(), 0.0);
  out.pert_l1.resize(f.n_species(), 0.0);
  std::int64_t plane = f.grid.plane();
  for (int s = 0; s < f.n_species(); ++s) {
    const std::vector<double>& bg = f.background->background_table(s);
    const double* data = f.values[s].data();
    long double mass = 0.0L, l1 = 0.0L;
    for (int ix = 0; ix < f.grid.nx; ++ix) {
      const double* cell = data + static_cast<std::int64_t>(ix) * plane;
      for (std::int64_t k = 0; k < plane; ++k) {
        double v = cell[k];
        if (v < out.fmin) out.fmin = v;
        if (v > out.fmax) out.fmax = v;
        double dev = v - bg[static_cast<size_t>(k)];
        if (dev != 0.0) {
          long double w = engine.tables[s].quad_w[static_cast<size_t>(k)];
          mass += static_cast<long double>(dev) * w;
          l1 += static_cast<long double>(std::abs(dev)) * w;
        }
      }
    }
    out.pert_mass[s] = static_cast<double>(mass) * f.grid.dx;
    out.pert_l1[s] = static_cast<double>(l1) * f.grid.dx;
  }
  return out;
}

HistoryRecord make_record(double t, const FieldState& fields,
                          const SourceMoments& moments,
                          const EnergyDiagnostics& energy) {
  HistoryRecord r;
  r.time = t;
  r.e1 = fields.e1;
  r.e2 = fields.e2;
  r.b = fields.b;
  r.rho = moments.rho;
  r.j1 = moments.j1;
  r.j2 = moments.j2;
  r.eps_tilde = energy.eps_tilde;
  r.mom_tilde = energy.mom_tilde;
  r.kplus = energy.kplus;
  r.kminus = energy.kminus;
  return r;
}

SnapshotData make_snapshot(const SimulationState& state, SpeedOfLight c) {
  const PhaseSpaceGrid& g = state.f.grid;
  SnapshotData d;
  d.n_species = static_cast<std::uint32_t>(state.f.n_species());
  d.nx = static_cast<std::uint32_t>(g.nx);
  d.np1 = static_cast<std::uint32_t>(g.np1);
  d.np2 = static_cast<std::uint32_t>(g.np2);
  d.c_storage = c.storage_value();
  d.t = state.time;
  d.x_max = g.x_max;
  d.p1_max = g.p1_max;
  d.p2_max = g.p2_max;
  d.f = state.f.values;
  d.e1 = state.fields.e1;
  d.e2 = state.fields.e2;
  d.b = state.fields.b;
  return d;
}

std::string snapshot_name(std::int64_t step) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "snapshot_%06lld.vml1",
                static_cast<long long>(step));
  return buf;
}

}  // namespace

std::string series_header() {
  return "t,total_eps,total_eps_tilde,Q_t,e1_sup,e2_runmax,b_runmax,"
         "kplus_max,kminus_max,ampere_residual,total_mom_tilde,"
         "charge_residual,mass_drift,eps_drift";
}

std::string format_series_row(const SeriesRow& r) {
  std::string out = fmt(r.t);
  for (double v : {r.total_eps, r.total_eps_tilde, r.q_t, r.e1_sup,
                   r.e2_runmax, r.b_runmax, r.kplus_max, r.kminus_max,
                   r.ampere_residual, r.total_mom_tilde, r.charge_residual,
                   r.mass_drift, r.eps_drift}) {
    out += ',';
    out += fmt(v);
  }
  return out;
}

double pick_dt(const RunConfig& config, const PhaseSpaceGrid& grid,
               const InitialData& initial) {
  double m0 = config.min_mass();
  double dt = config.cfl_fraction * grid.dx * m0 / grid.p1_max;

  // Force estimate from c-independent initial-data bounds: the Gauss field
  // of the initial charge plus the transverse pulse that 4 pi j2 can ring up
  // over the whole run, with the current taken at its Newtonian value. Kept
  // free of c so every run of a sweep lands on the identical dt.
  double e1_sup = 0.0;
  for (double v : initial.fields.e1) e1_sup = std::max(e1_sup, std::abs(v));

  double j2_sup = 0.0;
  std::int64_t plane = grid.plane();
  const DistributionField& f = initial.f;
  for (int ix = 0; ix < grid.nx; ++ix) {
    double j2n = 0.0;
    for (int s = 0; s < f.n_species(); ++s) {
      const double* cell =
          f.values[s].data() + static_cast<std::int64_t>(ix) * plane;
      const SpeciesParams& sp = f.background->species()[s];
      double acc = 0.0;
      for (int j1 = 0; j1 < grid.np1; ++j1)
        for (int j2 = 0; j2 < grid.np2; ++j2) {
          std::int64_t k = static_cast<std::int64_t>(j1) * grid.np2 + j2;
          double w = ((j1 == 0 || j1 == grid.np1 - 1) ? 0.5 : 1.0) *
                     ((j2 == 0 || j2 == grid.np2 - 1) ? 0.5 : 1.0) * grid.dp1 *
                     grid.dp2;
          acc += cell[k] * std::abs(grid.p2_node(j2)) / sp.mass * w;
        }
      j2n += std::abs(sp.charge) * acc;
    }
    j2_sup = std::max(j2_sup, j2n);
  }

  double e_max = 0.0;
  for (const auto& sp : f.background->species())
    e_max = std::max(e_max, std::abs(sp.charge));
  double wave_est = config.profile.e2_amp + config.profile.b_amp +
                    kFourPi * config.t_final * j2_sup;
  double force_est = 4.0 * e_max * (e1_sup + wave_est);
  if (force_est > 0.0)
    dt = std::min(dt, config.cfl_fraction * std::min(grid.dp1, grid.dp2) /
                          force_est);
  dt = std::min(dt, config.dt_cap);

  double steps = std::ceil(config.t_final / dt * (1.0 - 1e-12));
  return config.t_final / std::max(1.0, steps);
}

RunResult run_simulation(const RunConfig& config) {
  config.check();
  if (config.c.is_infinite() &&
      (config.profile.e2_amp != 0.0 || config.profile.b_amp != 0.0))
    throw ConfigError(
        "run: the limit system carries no transverse fields; e2_amp and "
        "b_amp must be zero when c = inf");

  RunResult res;
  res.config = config;
  res.grid = config.make_grid();
  const PhaseSpaceGrid& grid = res.grid;
  SpeedOfLight c = config.c;
  bool finite = c.is_finite();
  double cinv = c.inverse();

  auto profile = std::make_shared<BackgroundProfile>(
      BackgroundProfile::build(config.profile, config.species, grid));
  MomentEngine engine = MomentEngine::build(grid, *profile, c);
  double tol_neutral = default_tol_neutral(grid);

  res.initial = build_initial_data(grid, profile, engine, tol_neutral);
  res.validation = validate_initial_data(res.initial, grid, engine, tol_neutral);
  if (!res.validation.all_pass())
    throw ConfigError("initial data failed validation:\n" +
                      res.validation.summary());

  res.dt = pick_dt(config, grid, res.initial);
  res.steps = static_cast<std::int64_t>(
      std::llround(config.t_final / res.dt));

  // Table-level sigma checks are c- and time-independent: once per run.
  {
    double margin = DBL_MAX;
    for (const KinematicsTable& t : engine.tables)
      for (size_t k = 0; k < t.sig_plus.size(); ++k) {
        double mp = t.sig_plus[k] - t.sig_floor[k];
        double mm = t.sig_minus[k] - t.sig_floor[k];
        margin = std::min(margin, std::min(mp, mm));
        if (mp < 0.0 || mm < 0.0 || t.sig_plus[k] < 0.0 || t.sig_minus[k] < 0.0)
          ++res.violations.sigma_floor;
      }
    res.sigma_floor_margin = margin;
  }

  SimulationState& state = res.state;
  state.f = res.initial.f;
  state.fields = res.initial.fields;
  state.moments = res.initial.moments;
  state.time = 0.0;
  state.step = 0;

  double max_f0 = res.initial.max_f0;
  double support_thr = config.support_threshold_rel * max_f0;
  double q_abort = 0.9 * std::min(grid.p1_max, grid.p2_max);
  double x_guard = grid.x_max - (grid.nghost + 1) * grid.dx;
  double charge_denom = std::max(res.initial.charge_scale, 1e-12);

  std::vector<double> max_f0_per_species(state.f.n_species(), 0.0);
  for (int s = 0; s < state.f.n_species(); ++s)
    for (double v : state.f.values[s])
      max_f0_per_species[s] = std::max(max_f0_per_species[s], v);

  ScratchBuffers scratch;
  RunHistory& history = res.history;
  history.grid = grid;

  StepScan scan0 = scan_distribution(state.f, engine);
  std::vector<double> mass0 = scan0.pert_mass;
  // One scale for every species: an initially unperturbed species acquires
  // deviations dynamically, and its signed deviation sum stays conserved at
  // round-off level, so dividing by its own (zero) L1 would be meaningless.
  double mass_scale = 1e-12;
  for (double v : scan0.pert_l1) mass_scale = std::max(mass_scale, v);
  res.min_f = scan0.fmin;
  res.max_f = scan0.fmax;

  EnergyDiagnostics energy = energy_fields(state.f, state.fields, engine, c);
  double eps0 = energy.total_eps_tilde;
  double eps_denom = std::max(std::abs(eps0), 1e-12);
  long double flux_accum = 0.0L;
  double flux_prev =
      energy.mom_tilde.empty()
          ? 0.0
          : energy.mom_tilde[grid.nx - 1] - energy.mom_tilde[0];

  res.cone_energy_margin = DBL_MAX;
  res.bridge_margin = DBL_MAX;

  auto check_step = [&](const EnergyDiagnostics& en, const StepScan& scan) {
    if (scan.fmin < -1e-10 * max_f0) ++res.violations.f_negative;
    for (int i = 0; i < grid.nx; ++i) {
      if (en.kplus[i] < 0.0) ++res.violations.k_negative;
      if (en.kminus[i] < 0.0) ++res.violations.k_negative;
      double e1 = state.fields.e1[i];
      double gp = state.fields.e2[i] + state.fields.b[i];
      double gm = state.fields.e2[i] - state.fields.b[i];
      double lhs_p = en.eps_tilde[i] + cinv * en.mom_tilde[i];
      double lhs_m = en.eps_tilde[i] - cinv * en.mom_tilde[i];
      double rhs_p = (e1 * e1 + gp * gp) / (2.0 * kFourPi);
      double rhs_m = (e1 * e1 + gm * gm) / (2.0 * kFourPi);
      double scale_p = std::max({std::abs(en.eps_tilde[i]),
                                 std::abs(cinv * en.mom_tilde[i]), rhs_p,
                                 1e-300});
      double scale_m = std::max({std::abs(en.eps_tilde[i]),
                                 std::abs(cinv * en.mom_tilde[i]), rhs_m,
                                 1e-300});
      double rel_p = (lhs_p - rhs_p) / scale_p;
      double rel_m = (lhs_m - rhs_m) / scale_m;
      res.cone_energy_margin = std::min({res.cone_energy_margin, rel_p, rel_m});
      if (rel_p < -4.0 * DBL_EPSILON || rel_m < -4.0 * DBL_EPSILON)
        ++res.violations.cone_energy;
    }
  };

  auto emit_row = [&](const EnergyDiagnostics& en, const StepScan& scan,
                      double q_t) {
    SeriesRow row;
    row.t = state.time;
    row.total_eps = en.total_eps;
    row.total_eps_tilde = en.total_eps_tilde;
    row.q_t = q_t;
    double e1s = 0.0;
    for (double v : state.fields.e1) e1s = std::max(e1s, std::abs(v));
    row.e1_sup = e1s;
    res.e1_sup = std::max(res.e1_sup, e1s);
    row.e2_runmax = state.fields.e2_runmax;
    row.b_runmax = state.fields.b_runmax;
    row.kplus_max = en.kplus_max;
    row.kminus_max = en.kminus_max;
    row.total_mom_tilde = en.total_mom_tilde;

    long double q = 0.0L;
    for (double v : state.moments.rho) q += v;
    row.charge_residual = std::abs(static_cast<double>(q) * grid.dx) /
                          charge_denom;
    res.charge_residual_max = std::max(res.charge_residual_max,
                                       row.charge_residual);

    double md = 0.0;
    for (size_t s = 0; s < scan.pert_mass.size(); ++s) {
      md = std::max(md, std::abs(scan.pert_mass[s] - mass0[s]) / mass_scale);
    }
    row.mass_drift = md;
    res.mass_drift_rel = std::max(res.mass_drift_rel, md);

    row.eps_drift = std::abs(en.total_eps_tilde +
                             static_cast<double>(flux_accum) - eps0) /
                    eps_denom;
    res.eps_drift_rel = std::max(res.eps_drift_rel, row.eps_drift);

    std::int64_t n = static_cast<std::int64_t>(res.series.size());
    if (n >= 2) {
      double worst = 0.0;
      const std::vector<double>& ep = res.e1_series[n];
      const std::vector<double>& em = res.e1_series[n - 2];
      const std::vector<double>& jm = res.j1_series[n - 1];
      for (int i = 0; i < grid.nx; ++i)
        worst = std::max(worst, std::abs((ep[i] - em[i]) / (2.0 * res.dt) +
                                         kFourPi * jm[i]));
      row.ampere_residual = worst;
    }
    res.series.push_back(row);
  };

  auto record_diag = [&](const EnergyDiagnostics& en) {
    history.records.push_back(
        make_record(state.time, state.fields, state.moments, en));
    BridgeReport br = j2_k_bridge_check(state.moments.j2, en, engine,
                                        max_f0_per_species, c);
    res.bridge_margin = std::min(res.bridge_margin,
                                 std::min(br.margin_plus, br.margin_minus));
  };

  std::filesystem::path out;
  bool writing = !config.out_dir.empty();
  if (writing) {
    out = config.out_dir;
    std::filesystem::create_directories(out);
    std::ofstream cfg_echo(out / "config.txt", std::ios::binary);
    cfg_echo << render_config(config);
  }

  double q0_t = support_radius(state.f, support_thr);
  res.q_max = q0_t;
  res.e1_series.push_back(state.fields.e1);
  res.j1_series.push_back(state.moments.j1);
  if (config.strict_invariants) check_step(energy, scan0);
  emit_row(energy, scan0, q0_t);
  record_diag(energy);
  if (writing && config.snapshot_stride > 0)
    write_snapshot((out / snapshot_name(0)).string(),
                   make_snapshot(state, c));

  for (std::int64_t n = 1; n <= res.steps; ++n) {
    if (finite)
      step_rvm(state, engine, c, res.dt, tol_neutral, scratch);
    else
      step_vp(state, engine, res.dt, tol_neutral, scratch);

    energy = energy_fields(state.f, state.fields, engine, c);
    if (!std::isfinite(energy.total_eps_tilde))
      throw SolverError("run aborted: non-finite energy at step " +
                        std::to_string(n));

    double flux_now =
        energy.mom_tilde[grid.nx - 1] - energy.mom_tilde[0];
    flux_accum += 0.5L * res.dt * (static_cast<long double>(flux_prev) +
                                   flux_now);
    flux_prev = flux_now;

    StepScan scan = scan_distribution(state.f, engine);
    res.min_f = std::min(res.min_f, scan.fmin);
    res.max_f = std::max(res.max_f, scan.fmax);

    double q_t = support_radius(state.f, support_thr);
    res.q_max = std::max(res.q_max, q_t);
    if (q_t >= q_abort)
      throw SupportOverflowError(
          "run aborted: momentum support " + std::to_string(q_t) +
          " reached 90% of the box at step " + std::to_string(n));
    if (deviation_x_radius(state.f, 0.01 * max_f0) >= x_guard)
      throw SupportOverflowError(
          "run aborted: matter deviation reached the ghost bands at step " +
          std::to_string(n));

    res.e1_series.push_back(state.fields.e1);
    res.j1_series.push_back(state.moments.j1);
    if (config.strict_invariants) check_step(energy, scan);
    emit_row(energy, scan, q_t);

    if (n % config.diag_stride == 0 || n == res.steps) record_diag(energy);
    if (writing && config.snapshot_stride > 0 &&
        (n % config.snapshot_stride == 0))
      write_snapshot((out / snapshot_name(n)).string(),
                     make_snapshot(state, c));
  }

  if (writing) {
    std::ofstream series(out / "series.csv", std::ios::binary);
    series << series_header() << "\n";
    for (const SeriesRow& row : res.series)
      series << format_series_row(row) << "\n";
    write_snapshot((out / "final.vml1").string(), make_snapshot(state, c));
    write_history((out / "history.vmh").string(), history, c);
  }
  return res;
}

}  // namespace vmlimit
