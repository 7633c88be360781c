#include "ecrelay/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace ecrelay {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw std::invalid_argument("bad numeric value for '" + key + "': " + v);
  return x;
}

long long parse_int(const std::string& key, const std::string& v) {
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw std::invalid_argument("bad integer value for '" + key + "': " + v);
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("bad boolean value for '" + key + "': " + v);
}

}  // namespace

std::vector<double> parse_snr_spec(const std::string& spec) {
  const std::string s = trim(spec);
  if (s.empty()) throw std::invalid_argument("empty SNR specification");

  std::vector<double> points;
  if (s.find(':') != std::string::npos) {
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos)
      throw std::invalid_argument("SNR range must be start:stop:step");
    const double start = parse_double("snr", s.substr(0, c1));
    const double stop = parse_double("snr", s.substr(c1 + 1, c2 - c1 - 1));
    const double step = parse_double("snr", s.substr(c2 + 1));
    if (!(step > 0.0) || stop < start)
      throw std::invalid_argument("SNR range needs step > 0 and stop >= start");
    for (int k = 0;; ++k) {
      const double x = start + step * k;
      if (x > stop + 1e-9) break;
      points.push_back(x);
    }
    return points;
  }
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const std::string tok =
        trim(comma == std::string::npos ? s.substr(pos)
                                        : s.substr(pos, comma - pos));
    if (tok.empty()) throw std::invalid_argument("empty SNR list entry");
    points.push_back(parse_double("snr", tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return points;
}

void apply_setting(CliConfig& cfg, const std::string& key,
                   const std::string& value) {
  SystemParams& p = cfg.sim.params;
  if (key == "sigma_w1_sq") p.sigma_w1_sq = parse_double(key, value);
  else if (key == "sigma_w2_sq") p.sigma_w2_sq = parse_double(key, value);
  else if (key == "sigma_wb1_sq") p.sigma_wb1_sq = parse_double(key, value);
  else if (key == "sigma_wb2_sq") p.sigma_wb2_sq = parse_double(key, value);
  else if (key == "gamma12") p.gamma12 = parse_double(key, value);
  else if (key == "gamma21") p.gamma21 = parse_double(key, value);
  else if (key == "sigma_h1_sq") p.sigma_h1_sq = parse_double(key, value);
  else if (key == "sigma_h2_sq") p.sigma_h2_sq = parse_double(key, value);
  else if (key == "mu_S") p.mu_S = parse_double(key, value);
  else if (key == "sd_S") p.sd_S = parse_double(key, value);
  else if (key == "mu_R1") p.mu_R1 = parse_double(key, value);
  else if (key == "sd_R1") p.sd_R1 = parse_double(key, value);
  else if (key == "mu_R2") p.mu_R2 = parse_double(key, value);
  else if (key == "sd_R2") p.sd_R2 = parse_double(key, value);
  else if (key == "ess_enabled") p.ess_enabled = parse_bool(key, value);
  else if (key == "ec_enabled") p.ec_enabled = parse_bool(key, value);
  else if (key == "mode") {
    if (value != "capacity" && value != "outage" && value != "verify")
      throw std::invalid_argument("mode must be capacity, outage or verify");
    cfg.mode = value;
  } else if (key == "snr") cfg.snr_spec = value;
  else if (key == "trials") cfg.sim.trials = static_cast<int>(parse_int(key, value));
  else if (key == "cycles") cfg.sim.cycles_per_trial = static_cast<int>(parse_int(key, value));
  else if (key == "seed") cfg.sim.seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "grid_n_oracle") cfg.sim.grid_n_oracle = static_cast<int>(parse_int(key, value));
  else if (key == "r1") cfg.sim.targets.r1_star = parse_double(key, value);
  else if (key == "r2") cfg.sim.targets.r2_star = parse_double(key, value);
  else if (key == "out") cfg.out_path = value;
  else if (key == "instances") cfg.instances = static_cast<int>(parse_int(key, value));
  else if (key == "grid") cfg.grid = static_cast<int>(parse_int(key, value));
  else if (key == "serial") cfg.serial = parse_bool(key, value);
  else throw std::invalid_argument("unknown configuration key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> settings;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " is not 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " has an empty key or value");
    settings.emplace_back(key, value);
  }
  return settings;
}

void CliConfig::finalize() {
  sim.snr_points_db = parse_snr_spec(snr_spec);
  sim.mode = mode == "outage" ? SimMode::Outage : SimMode::Capacity;
  if (mode == "verify") {
    if (instances < 1)
      throw std::invalid_argument("instances must be >= 1");
    if (grid < 64) throw std::invalid_argument("grid must be >= 64");
    sim.params.validate();
    return;
  }
  sim.validate();
}

}  // namespace ecrelay
