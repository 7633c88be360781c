// Command-line front end: capacity and outage sweeps to CSV, plus a solver
// verification mode. Exit codes: 0 success, 1 verification failure, 2 bad
// arguments or configuration.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ecrelay/config.hpp"
#include "ecrelay/csv.hpp"
#include "ecrelay/sim.hpp"

namespace {

struct RawArgs {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

int run(const ecrelay::CliConfig& cfg, bool verbose) {
  using namespace ecrelay;

  if (cfg.mode == "verify") {
    const VerifyReport rep =
        run_verify(cfg.sim.params, cfg.instances, cfg.grid, cfg.sim.seed);
    std::printf("verify: %d instances, oracle grid %d\n", rep.instances,
                cfg.grid);
    std::printf("  feasibility violations : %d\n", rep.feasibility_violations);
    std::printf("  dominance violations   : %d\n", rep.dominance_violations);
    std::printf("  stationarity violations: %d\n", rep.stationarity_violations);
    std::printf("  oracle violations      : %d (max gap %.3g bits)\n",
                rep.oracle_violations, rep.max_oracle_gap);
    if (!rep.ok()) {
      std::printf("verify: FAIL\n");
      return 1;
    }
    std::printf("verify: OK\n");
    return 0;
  }

  const ExecPolicy policy =
      cfg.serial ? ExecPolicy::Serial : ExecPolicy::OpenMP;
  if (verbose)
    std::fprintf(stderr, "running %s sweep: %zu SNR points, %d trials x %d cycles (%s)\n",
                 cfg.mode.c_str(), cfg.sim.snr_points_db.size(),
                 cfg.sim.trials, cfg.sim.cycles_per_trial,
                 cfg.serial ? "serial" : "parallel");
  const std::vector<SweepRow> rows = run_sweep(cfg.sim, policy);

  if (cfg.out_path.empty()) {
    write_csv(std::cout, rows);
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "error: cannot open output file '%s'\n",
                   cfg.out_path.c_str());
      return 2;
    }
    write_csv(out, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Rate-optimal per-cycle allocation and Monte Carlo sweeps for a "
      "two-hop network with two energy-conferencing relays"};

  RawArgs raw;
  bool verbose = false;
  app.add_option("--config", raw.config_path,
                 "line-based key = value configuration file");
  app.add_flag("-v,--verbose", verbose, "progress notes on stderr");

  // Every config key is also a flag of the same name; flags win over the
  // file.
  static const char* keys[] = {
      "sigma_w1_sq", "sigma_w2_sq", "sigma_wb1_sq", "sigma_wb2_sq",
      "gamma12", "gamma21", "sigma_h1_sq", "sigma_h2_sq",
      "mu_S", "sd_S", "mu_R1", "sd_R1", "mu_R2", "sd_R2",
      "ess_enabled", "ec_enabled", "mode", "snr", "trials", "cycles",
      "seed", "grid_n_oracle", "r1", "r2", "out", "instances", "grid",
      "serial"};
  for (const char* key : keys) {
    app.add_option_function<std::string>(
        std::string("--") + key,
        [&raw, key](const std::string& v) {
          raw.overrides.emplace_back(key, v);
        });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help exits 0, bad arguments exit 2
  }

  try {
    ecrelay::CliConfig cfg;
    if (!raw.config_path.empty())
      for (const auto& [k, v] : ecrelay::read_config_file(raw.config_path))
        ecrelay::apply_setting(cfg, k, v);
    for (const auto& [k, v] : raw.overrides) ecrelay::apply_setting(cfg, k, v);
    cfg.finalize();
    return run(cfg, verbose);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
