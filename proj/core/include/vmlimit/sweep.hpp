#pragma once

#include <string>
#include <vector>

#include "vmlimit/diagnostics.hpp"
#include "vmlimit/runner.hpp"

namespace vmlimit {

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;   // of log(gap) vs log(c)
  double residual = 0.0;    // RMS of the log residuals
  int n = 0;
};

// Ordinary least squares of log(gap) against log(c). Throws ConfigError on
// fewer than two points or on a nonpositive gap, naming the offending c.
RateFit fit_rate(const std::vector<double>& c_values,
                 const std::vector<double>& gaps);

struct SweepRow {
  double c = 0.0;
  ErrorNorms norms;            // against the limit run at the same final time
  double lambda_sup = 0.0;     // far-field field sup over this run's history
  bool lambda_empty = true;
  double lambda_d0 = 0.0;

  // Uniformity readings, for the "bounded not on c" comparison.
  double max_f = 0.0;
  double e1_sup = 0.0;
  double e2_runmax = 0.0;
  double b_runmax = 0.0;
  double q_max = 0.0;
};

struct SweepResult {
  std::vector<double> c_values;  // ascending, finite
  std::vector<SweepRow> rows;    // same order
  RateFit fit;
  bool fit_valid = false;        // false for a single-entry list
  int inversions = 0;            // adjacent gap increases beyond 10%
  double dt = 0.0;
  std::int64_t steps = 0;

  RunResult reference;           // the c = inf run
  std::vector<RunResult> runs;   // finite-c runs, same order as rows
};

// Runs the limit reference once, then every finite c on the identical grid
// and dt, and fits the total sup-norm gap against c. Requires e2_amp and
// b_amp zero. jobs = 0 uses the hardware concurrency; the VMLIMIT_THREADS
// environment variable caps the pool either way. Any aborted run voids the
// sweep (the exception propagates). When config.out_dir is set, each run
// writes under <out_dir>/c_<value> and the summary lands in sweep.csv.
SweepResult run_sweep(const RunConfig& config,
                      const std::vector<double>& c_list, int jobs = 0);

std::string sweep_summary_csv(const SweepResult& result);

}  // namespace vmlimit
