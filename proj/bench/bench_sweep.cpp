// Wall-time comparison of the serial reference engine against the OpenMP
// engine on identical capacity sweeps, verifying the outputs match.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ecrelay/csv.hpp"
#include "ecrelay/sim.hpp"

using namespace ecrelay;

namespace {

std::string as_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

double timed_run(const SimConfig& cfg, ExecPolicy policy, std::string& csv) {
  const auto start = std::chrono::steady_clock::now();
  csv = as_csv(run_sweep(cfg, policy));
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  SimConfig cfg;
  cfg.mode = SimMode::Capacity;
  cfg.snr_points_db = {0.0, 10.0, 20.0, 30.0};
  cfg.trials = argc > 1 ? std::atoi(argv[1]) : 2000;
  cfg.cycles_per_trial = 10;
  cfg.seed = 7;

#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::printf("capacity sweep, %zu SNR points, %d trials x %d cycles, %d threads\n",
              cfg.snr_points_db.size(), cfg.trials, cfg.cycles_per_trial,
              threads);

  std::string serial_csv;
  std::string parallel_csv;
  const double t_serial = timed_run(cfg, ExecPolicy::Serial, serial_csv);
  const double t_parallel = timed_run(cfg, ExecPolicy::OpenMP, parallel_csv);

  std::printf("serial reference : %8.3f s\n", t_serial);
  std::printf("openmp engine    : %8.3f s\n", t_parallel);
  std::printf("speedup          : %8.2fx\n", t_serial / t_parallel);
  if (serial_csv != parallel_csv) {
    std::printf("ERROR: engines disagree\n");
    return 1;
  }
  std::printf("outputs identical: yes\n");
  return 0;
}
