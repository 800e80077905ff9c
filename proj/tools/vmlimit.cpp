// Command line front end: validate configs, run single simulations, run
// c-sweep convergence studies, and post-process stored histories.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vmlimit/config.hpp"
#include "vmlimit/diagnostics.hpp"
#include "vmlimit/errors.hpp"
#include "vmlimit/initial_data.hpp"
#include "vmlimit/runner.hpp"
#include "vmlimit/snapshot.hpp"
#include "vmlimit/sweep.hpp"

namespace {

using namespace vmlimit;

int cmd_validate(const std::string& config_path) {
  RunConfig config = parse_config_file(config_path);
  PhaseSpaceGrid grid = config.make_grid();
  auto profile = std::make_shared<BackgroundProfile>(
      BackgroundProfile::build(config.profile, config.species, grid));
  MomentEngine engine = MomentEngine::build(grid, *profile, config.c);
  double tol = default_tol_neutral(grid);
  InitialData data = build_initial_data(grid, profile, engine, tol);
  ValidationReport report = validate_initial_data(data, grid, engine, tol);
  std::fputs(report.summary().c_str(), stdout);
  if (!report.all_pass()) {
    std::fputs("validation FAILED\n", stdout);
    return 2;
  }
  std::printf("validation passed (%zu checks)\n", report.items.size());
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_override) {
  RunConfig config = parse_config_file(config_path);
  if (!out_override.empty()) config.out_dir = out_override;
  RunResult res = run_simulation(config);
  std::printf("steps            %lld (dt = %.6g)\n",
              static_cast<long long>(res.steps), res.dt);
  std::printf("final time       %.6g\n", res.state.time);
  std::printf("sup f / max f0   %.6g / %.6g\n", res.max_f, res.initial.max_f0);
  std::printf("min f            %.6g\n", res.min_f);
  std::printf("Q max            %.6g\n", res.q_max);
  std::printf("e1 sup           %.6g\n", res.e1_sup);
  std::printf("e2/b run max     %.6g / %.6g\n", res.state.fields.e2_runmax,
              res.state.fields.b_runmax);
  std::printf("mass drift       %.3e\n", res.mass_drift_rel);
  std::printf("charge residual  %.3e\n", res.charge_residual_max);
  std::printf("energy drift     %.3e\n", res.eps_drift_rel);
  std::printf("invariant violations %lld\n",
              static_cast<long long>(res.violations.total()));
  if (!config.out_dir.empty())
    std::printf("wrote %s\n", config.out_dir.c_str());
  return res.violations.total() == 0 ? 0 : 3;
}

int cmd_sweep(const std::string& config_path, const std::string& c_list_arg,
              int jobs) {
  RunConfig config = parse_config_file(config_path);
  std::vector<double> c_list;
  std::string item;
  for (size_t pos = 0; pos <= c_list_arg.size(); ++pos) {
    if (pos == c_list_arg.size() || c_list_arg[pos] == ',') {
      if (!item.empty()) {
        try {
          size_t used = 0;
          double v = std::stod(item, &used);
          if (used != item.size()) throw std::invalid_argument(item);
          c_list.push_back(v);
        } catch (const std::exception&) {
          throw ConfigError("sweep: bad c value '" + item + "'");
        }
        item.clear();
      }
    } else if (!std::isspace(static_cast<unsigned char>(c_list_arg[pos]))) {
      item += c_list_arg[pos];
    }
  }
  SweepResult result = run_sweep(config, c_list, jobs);
  std::fputs(sweep_summary_csv(result).c_str(), stdout);
  return 0;
}

int cmd_diagnose(const std::string& history_dir,
                 const std::vector<std::string>& apexes, double d0,
                 double m0) {
  SpeedOfLight c;
  RunHistory history = read_history(history_dir + "/history.vmh", c);
  std::printf("history: %zu records, t in [%.6g, %.6g], c = %s\n",
              history.records.size(), history.t_begin(), history.t_end(),
              c.is_finite() ? std::to_string(c.value()).c_str() : "inf");
  for (const std::string& spec : apexes) {
    double t = 0.0, x = 0.0;
    if (std::sscanf(spec.c_str(), "%lf,%lf", &t, &x) != 2)
      throw ConfigError("diagnose: bad apex '" + spec + "', want t,x");
    TriangleCheck tc = triangle_residual(history, t, x, c);
    std::printf(
        "apex (%.6g, %.6g): I=%.9g II=%.9g III=%.9g residual=%.3e "
        "rel=%.3e edge_k+=%.9g edge_k-=%.9g%s\n",
        t, x, tc.I, tc.II, tc.III, tc.residual,
        std::abs(tc.residual) / std::max(tc.I, 1e-12), tc.edge_kplus,
        tc.edge_kminus, tc.clipped ? " [clipped]" : "");
  }
  if (d0 > 0.0) {
    LambdaRegion region;
    region.d0 = d0;
    region.m0 = m0;
    LambdaSup ls = lambda_sup(history, region);
    if (ls.empty)
      std::printf("lambda(d0=%.6g, m0=%.6g): region misses the grid\n", d0, m0);
    else
      std::printf("lambda(d0=%.6g, m0=%.6g): field sup %.9g\n", d0, m0,
                  ls.value);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic 1.5D relativistic Vlasov-Maxwell solver and "
               "its nonrelativistic-limit study harness"};
  app.require_subcommand(1);

  std::string config_path, out_override, c_list_arg = "4,8,16,32";
  std::string history_dir;
  std::vector<std::string> apexes;
  int jobs = 0;
  double d0 = 0.0, m0 = 1.0;

  CLI::App* validate = app.add_subcommand("validate", "check a config and its initial data");
  validate->add_option("--config", config_path, "config file")->required();

  CLI::App* run = app.add_subcommand("run", "run one simulation");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_override, "output directory (overrides config)");

  CLI::App* sweep = app.add_subcommand("sweep", "run the c-sweep convergence study");
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--c-list", c_list_arg, "comma-separated ascending c values");
  sweep->add_option("--jobs", jobs, "worker pool size (0 = hardware)");

  CLI::App* diagnose = app.add_subcommand("diagnose", "post-process a stored history");
  diagnose->add_option("--history", history_dir, "run output directory")->required();
  diagnose->add_option("--apex", apexes, "characteristic-triangle apex t,x (repeatable)");
  diagnose->add_option("--d0", d0, "far-field region offset (enables the lambda report)");
  diagnose->add_option("--m0", m0, "far-field region slope mass");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(config_path);
    if (run->parsed()) return cmd_run(config_path, out_override);
    if (sweep->parsed()) return cmd_sweep(config_path, c_list_arg, jobs);
    if (diagnose->parsed()) return cmd_diagnose(history_dir, apexes, d0, m0);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver abort: %s\n", e.what());
    return 3;
  } catch (const SnapshotError& e) {
    std::fprintf(stderr, "file error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
