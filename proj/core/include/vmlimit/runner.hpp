#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vmlimit/config.hpp"
#include "vmlimit/diagnostics.hpp"
#include "vmlimit/history.hpp"
#include "vmlimit/initial_data.hpp"
#include "vmlimit/vlasov.hpp"

namespace vmlimit {

// One output row of the time-series file, in column order.
struct SeriesRow {
  double t = 0.0;
  double total_eps = 0.0;
  double total_eps_tilde = 0.0;
  double q_t = 0.0;
  double e1_sup = 0.0;
  double e2_runmax = 0.0;
  double b_runmax = 0.0;
  double kplus_max = 0.0;
  double kminus_max = 0.0;
  double ampere_residual = 0.0;  // lagged one step (centered difference)
  double total_mom_tilde = 0.0;
  double charge_residual = 0.0;
  double mass_drift = 0.0;
  double eps_drift = 0.0;
};

std::string series_header();
std::string format_series_row(const SeriesRow& row);

// Counts of per-step invariant failures (each expected to stay zero).
struct InvariantViolations {
  std::int64_t f_negative = 0;    // f below -1e-10 max f0
  std::int64_t k_negative = 0;    // k+- below zero
  std::int64_t cone_energy = 0;   // eps_tilde +- c^-1 mom_tilde under field part
  std::int64_t sigma_floor = 0;   // table sigma below its lower bound
  std::int64_t total() const {
    return f_negative + k_negative + cone_energy + sigma_floor;
  }
};

struct RunResult {
  RunConfig config;
  PhaseSpaceGrid grid;
  InitialData initial;       // state at t = 0, after the neutrality projection
  SimulationState state;     // state at t = T
  RunHistory history;
  std::vector<SeriesRow> series;
  std::vector<std::vector<double>> e1_series, j1_series;  // per step, for the
                                                          // Ampere cross-check
  double dt = 0.0;
  std::int64_t steps = 0;

  double q_max = 0.0;             // max_t of the support radius
  double max_f = 0.0;             // run sup of f
  double min_f = 0.0;             // run inf of f
  double e1_sup = 0.0;            // run sup of |E1|
  double mass_drift_rel = 0.0;    // worst species, relative to its t=0 value
  double charge_residual_max = 0.0;
  double eps_drift_rel = 0.0;     // total eps_tilde plus boundary flux
  double sigma_floor_margin = 0.0;
  double cone_energy_margin = 0.0;  // most negative pointwise slack seen
  double bridge_margin = 0.0;       // min over records of the j2 bound margin
  InvariantViolations violations;
  ValidationReport validation;
};

// Steps the configured system to t_final. Writes series/snapshot/history
// files when out_dir is set. Deterministic for a fixed config.
RunResult run_simulation(const RunConfig& config);

// The dt rule: min(cfl dx m0 / P1max, cfl min(dp) / force_estimate, dt_cap),
// then rounded so an integer step count lands exactly on t_final. The force
// estimate uses only c-independent initial-data bounds, so every c in a
// sweep runs with the identical dt.
double pick_dt(const RunConfig& config, const PhaseSpaceGrid& grid,
               const InitialData& initial);

}  // namespace vmlimit
