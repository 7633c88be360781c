#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ecrelay/config.hpp"
#include "ecrelay/csv.hpp"

using namespace ecrelay;

TEST_SUITE("cli") {

TEST_CASE("snr range specification") {
  const auto pts = parse_snr_spec("0:30:5");
  REQUIRE(pts.size() == 7);
  CHECK(pts.front() == 0.0);
  CHECK(pts.back() == 30.0);

  const auto list = parse_snr_spec("1, 2.5 ,3");
  REQUIRE(list.size() == 3);
  CHECK(list[1] == 2.5);

  const auto single = parse_snr_spec("20");
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 20.0);

  CHECK_THROWS_AS(parse_snr_spec("5:0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_snr_spec("0:10:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_snr_spec("0:10"), std::invalid_argument);
  CHECK_THROWS_AS(parse_snr_spec(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_snr_spec("a,b"), std::invalid_argument);
}

TEST_CASE("settings apply by key") {
  CliConfig cfg;
  apply_setting(cfg, "gamma12", "0.8");
  apply_setting(cfg, "mu_S", "300");
  apply_setting(cfg, "trials", "123");
  apply_setting(cfg, "mode", "outage");
  apply_setting(cfg, "ess_enabled", "false");
  apply_setting(cfg, "r1", "2.5");
  CHECK(cfg.sim.params.gamma12 == 0.8);
  CHECK(cfg.sim.params.mu_S == 300.0);
  CHECK(cfg.sim.trials == 123);
  CHECK(cfg.mode == "outage");
  CHECK_FALSE(cfg.sim.params.ess_enabled);
  CHECK(cfg.sim.targets.r1_star == 2.5);

  CHECK_THROWS_AS(apply_setting(cfg, "no_such_key", "1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_setting(cfg, "trials", "ten"), std::invalid_argument);
  CHECK_THROWS_AS(apply_setting(cfg, "mode", "plot"), std::invalid_argument);
}

TEST_CASE("config file round trip with overrides") {
  const std::string path = "ecrelay_test_config.txt";
  {
    std::ofstream out(path);
    out << "# experiment setup\n"
        << "mode = capacity\n"
        << "mu_S = 300   # raised source harvest\n"
        << "snr = 0:30:10\n"
        << "trials = 50\n"
        << "cycles = 3\n"
        << "seed = 7\n";
  }
  CliConfig cfg;
  for (const auto& [k, v] : read_config_file(path)) apply_setting(cfg, k, v);
  apply_setting(cfg, "trials", "60");  // flag wins over the file
  cfg.finalize();
  CHECK(cfg.sim.params.mu_S == 300.0);
  CHECK(cfg.sim.trials == 60);
  CHECK(cfg.sim.snr_points_db.size() == 4);
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_config_file("does_not_exist.cfg"), std::invalid_argument);
}

TEST_CASE("malformed config lines are rejected") {
  const std::string path = "ecrelay_test_badcfg.txt";
  {
    std::ofstream out(path);
    out << "trials 50\n";
  }
  CHECK_THROWS_AS(read_config_file(path), std::invalid_argument);
  std::remove(path.c_str());
}

TEST_CASE("csv header matches the row layout") {
  const std::string header = csv_header();
  const SweepRow row;
  const std::string line = csv_row(row);
  const auto count = [](const std::string& s) {
    std::size_t n = 1;
    for (char c : s)
      if (c == ',') ++n;
    return n;
  };
  CHECK(count(header) == 24);
  CHECK(count(line) == 24);
  CHECK(header.find("pct_A1") != std::string::npos);
  CHECK(header.find("pct_DEG") != std::string::npos);
  CHECK(header.find("outage_d2_noec_noess") != std::string::npos);
}

TEST_CASE("doubles round-trip through the CSV format") {
  std::mt19937_64 gen(71);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double x = u(gen) * std::pow(10.0, int(gen() % 13) - 6);
    const std::string s = format_double(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(format_double(0.0) == "0");
}

}  // TEST_SUITE
