#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ecrelay/sim.hpp"

namespace ecrelay {

/// Everything the CLI can set. Defaults follow the headline experiment:
/// unit noise and first-hop variances, 90% transfer efficiency, 100 +- 50 mJ
/// arrivals, 10^4 trials of 10 cycles over 0..30 dB in 2 dB steps.
struct CliConfig {
  SimConfig sim;
  std::string mode = "capacity";  // capacity | outage | verify
  std::string snr_spec = "0:30:2";
  std::string out_path;  // empty writes to stdout
  int instances = 1000;  // verify mode: instance count
  int grid = 4096;       // verify mode: oracle grid intervals
  bool serial = false;   // run the serial reference engine

  /// Resolves snr_spec into sim.snr_points_db and validates everything.
  void finalize();
};

/// "a:b:c" (start:stop:step, endpoint included), a comma list, or a single
/// value, all in dB.
std::vector<double> parse_snr_spec(const std::string& spec);

/// Applies one key=value setting; throws std::invalid_argument on unknown
/// keys or unparsable values. Keys mirror the flag names.
void apply_setting(CliConfig& cfg, const std::string& key,
                   const std::string& value);

/// Reads a line-based `key = value` file ('#' starts a comment). Returns
/// settings in file order.
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path);

}  // namespace ecrelay
