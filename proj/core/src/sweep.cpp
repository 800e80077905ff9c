#include "vmlimit/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <thread>

#include "vmlimit/errors.hpp"

namespace vmlimit {

namespace {

std::string c_label(double c) {
  char buf[32];
  if (c == static_cast<double>(static_cast<long long>(c)))
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(c));
  else
    std::snprintf(buf, sizeof buf, "%g", c);
  return buf;
}

int pool_size(int jobs, std::size_t work) {
  int n = jobs > 0 ? jobs
                   : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VMLIMIT_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, std::min<int>(n, static_cast<int>(work)));
}

}  // namespace

RateFit fit_rate(const std::vector<double>& c_values,
                 const std::vector<double>& gaps) {
  if (c_values.size() != gaps.size())
    throw ConfigError("fit_rate: mismatched point counts");
  if (c_values.size() < 2)
    throw ConfigError("fit_rate: need at least two points");
  for (size_t i = 0; i < gaps.size(); ++i) {
    if (!(c_values[i] > 0.0))
      throw ConfigError("fit_rate: nonpositive c " +
                        std::to_string(c_values[i]));
    if (!(gaps[i] > 0.0))
      throw ConfigError("fit_rate: nonpositive gap at c = " +
                        std::to_string(c_values[i]));
  }
  size_t n = c_values.size();
  long double sx = 0.0L, sy = 0.0L, sxx = 0.0L, sxy = 0.0L;
  for (size_t i = 0; i < n; ++i) {
    long double x = std::log(static_cast<long double>(c_values[i]));
    long double y = std::log(static_cast<long double>(gaps[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  long double denom = n * sxx - sx * sx;
  if (denom <= 0.0L)
    throw ConfigError("fit_rate: degenerate abscissas (equal c values)");
  RateFit fit;
  fit.n = static_cast<int>(n);
  fit.slope = static_cast<double>((n * sxy - sx * sy) / denom);
  fit.intercept = static_cast<double>((sy - fit.slope * sx) / n);
  long double rss = 0.0L;
  for (size_t i = 0; i < n; ++i) {
    long double x = std::log(static_cast<long double>(c_values[i]));
    long double y = std::log(static_cast<long double>(gaps[i]));
    long double r = y - (fit.slope * x + fit.intercept);
    rss += r * r;
  }
  fit.residual = static_cast<double>(std::sqrt(rss / n));
  return fit;
}

SweepResult run_sweep(const RunConfig& config,
                      const std::vector<double>& c_list, int jobs) {
  if (c_list.empty()) throw ConfigError("sweep: empty c list");
  for (size_t i = 0; i < c_list.size(); ++i) {
    if (!(c_list[i] > 0.0) || !std::isfinite(c_list[i]))
      throw ConfigError("sweep: c values must be finite and positive");
    if (i > 0 && c_list[i] <= c_list[i - 1])
      throw ConfigError("sweep: c list must be strictly ascending");
  }
  if (config.profile.e2_amp != 0.0 || config.profile.b_amp != 0.0)
    throw ConfigError(
        "sweep: the limit comparison requires e2_amp = 0 and b_amp = 0");

  SweepResult result;
  result.c_values = c_list;

  RunConfig ref_config = config;
  ref_config.c = SpeedOfLight::infinite();
  if (!config.out_dir.empty())
    ref_config.out_dir = config.out_dir + "/c_inf";
  result.reference = run_simulation(ref_config);
  result.dt = result.reference.dt;
  result.steps = result.reference.steps;

  result.runs.resize(c_list.size());
  std::vector<std::exception_ptr> failures(c_list.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= c_list.size()) return;
      try {
        RunConfig rc = config;
        rc.c = SpeedOfLight::finite(c_list[i]);
        if (!config.out_dir.empty())
          rc.out_dir = config.out_dir + "/c_" + c_label(c_list[i]);
        result.runs[i] = run_simulation(rc);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  int n_threads = pool_size(jobs, c_list.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (size_t i = 0; i < failures.size(); ++i)
    if (failures[i]) std::rethrow_exception(failures[i]);

  const RunResult& ref = result.reference;
  for (size_t i = 0; i < c_list.size(); ++i) {
    const RunResult& run = result.runs[i];
    if (run.dt != ref.dt || run.steps != ref.steps)
      throw SolverError("sweep: dt diverged between c = " +
                        std::to_string(c_list[i]) +
                        " and the reference; the dt rule must be c-free");

    SweepRow row;
    row.c = c_list[i];
    row.norms = error_norms(run.state.f, run.state.fields, ref.state.f,
                            ref.state.fields);

    // Far-field region from the measured supports of this run and the
    // reference, step by step (identical dt makes the sum exact).
    double sup_q = 0.0;
    for (size_t n = 0; n < run.series.size(); ++n)
      sup_q = std::max(sup_q, run.series[n].q_t + ref.series[n].q_t);
    LambdaRegion region;
    region.d0 = config.profile.r0 + (1.0 + config.t_final) * sup_q;
    region.m0 = config.min_mass();
    row.lambda_d0 = region.d0;
    LambdaSup ls = lambda_sup(run.history, region);
    row.lambda_sup = ls.value;
    row.lambda_empty = ls.empty;

    row.max_f = run.max_f;
    row.e1_sup = run.e1_sup;
    row.e2_runmax = run.state.fields.e2_runmax;
    row.b_runmax = run.state.fields.b_runmax;
    row.q_max = run.q_max;
    result.rows.push_back(row);
  }

  if (c_list.size() >= 2) {
    std::vector<double> gaps;
    for (const SweepRow& row : result.rows)
      gaps.push_back(row.norms.total_gap);
    result.fit = fit_rate(c_list, gaps);
    result.fit_valid = true;
    for (size_t i = 1; i < gaps.size(); ++i)
      if (gaps[i] > 1.10 * gaps[i - 1]) ++result.inversions;
  }

  if (!config.out_dir.empty()) {
    std::ofstream out(config.out_dir + "/sweep.csv", std::ios::binary);
    out << sweep_summary_csv(result);
  }
  return result;
}

std::string sweep_summary_csv(const SweepResult& result) {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::string out = "c,total_gap,e1_gap,e2_sup,b_sup";
  size_t n_species = result.rows.empty() ? 0 : result.rows[0].norms.h_sup.size();
  for (size_t s = 0; s < n_species; ++s)
    out += ",h_sup_" + std::to_string(s);
  out += ",lambda_sup,q_max,max_f,e1_sup\n";
  for (const SweepRow& row : result.rows) {
    out += fmt(row.c) + ',' + fmt(row.norms.total_gap) + ',' +
           fmt(row.norms.e1_gap) + ',' + fmt(row.norms.e2_sup) + ',' +
           fmt(row.norms.b_sup);
    for (double h : row.norms.h_sup) out += ',' + fmt(h);
    out += ',' + fmt(row.lambda_sup) + ',' + fmt(row.q_max) + ',' +
           fmt(row.max_f) + ',' + fmt(row.e1_sup) + '\n';
  }
  if (result.fit_valid)
    out += "# fit: slope " + fmt(result.fit.slope) + ", intercept " +
           fmt(result.fit.intercept) + ", residual " + fmt(result.fit.residual) +
           ", inversions " + std::to_string(result.inversions) + "\n";
  else
    out += "# fit: undefined (single entry)\n";
  return out;
}

}  // namespace vmlimit
