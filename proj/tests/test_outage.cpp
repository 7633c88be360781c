#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "ecrelay/model.hpp"
#include "ecrelay/outage.hpp"

using namespace ecrelay;

namespace {

SystemParams unit_params() { return SystemParams{}; }

RequiredEnergies random_req(std::mt19937_64& gen, const SystemParams& p,
                            double sigma_g) {
  std::exponential_distribution<double> h(1.0);
  std::exponential_distribution<double> g(1.0 / sigma_g);
  const ChannelRealization ch{h(gen), h(gen), g(gen), g(gen)};
  return required_energies(TargetRates{1.5, 1.5}, ch, p);
}

EnergyState random_energy(std::mt19937_64& gen) {
  std::normal_distribution<double> en(100.0, 50.0);
  return {std::max(0.0, en(gen)), std::max(0.0, en(gen)),
          std::max(0.0, en(gen))};
}

}  // namespace

TEST_SUITE("outage") {

TEST_CASE("required energies at the headline target") {
  const SystemParams p = unit_params();
  const ChannelRealization unit{1.0, 1.0, 1.0, 1.0};
  const RequiredEnergies r = required_energies(TargetRates{1.5, 1.5}, unit, p);
  const double expected = std::exp2(1.5) - 1.0;  // ~1.8284 mJ
  CHECK(r.e_s1 == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r.e_s2 == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r.e_R1 == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r.e_R2 == doctest::Approx(expected).epsilon(1e-12));

  const RequiredEnergies zero = required_energies(TargetRates{0.0, 0.0}, unit, p);
  CHECK(zero.e_s1 == 0.0);
  CHECK(zero.e_R2 == 0.0);

  const ChannelRealization dead{0.0, 1.0, 1.0, 1.0};
  const RequiredEnergies inf = required_energies(TargetRates{1.5, 1.5}, dead, p);
  CHECK(std::isinf(inf.e_s1));
  CHECK(std::isfinite(inf.e_R1));

  CHECK_THROWS_AS((required_energies(TargetRates{-1.0, 1.0}, unit, p)),
                  std::invalid_argument);
}

TEST_CASE("scenario a with a single bridging transfer") {
  const SystemParams p = unit_params();
  const double need = std::exp2(1.5) - 1.0;
  const RequiredEnergies req{need, need, need, need};
  const OutageOutcome o = classify_outage({10.0, 1.0, 10.0}, req, p);
  CHECK(o.scenario == Scenario::A);
  CHECK_FALSE(o.out_link1);
  CHECK_FALSE(o.out_link2);
  CHECK(o.delta21 == doctest::Approx((need - 1.0) / 0.9).epsilon(1e-12));
  CHECK(o.delta12 == 0.0);
  // donor covers its own requirement plus the transfer
  CHECK(o.e_R2 + o.delta21 <= 10.0 + kTol);
  CHECK(o.e_s1 == doctest::Approx(need));
  CHECK(o.e_R1 == doctest::Approx(need));
}

TEST_CASE("ample budgets need no transfer") {
  const SystemParams p = unit_params();
  const RequiredEnergies req{1.0, 1.0, 1.0, 1.0};
  const OutageOutcome o = classify_outage({10.0, 10.0, 10.0}, req, p);
  CHECK(o.scenario == Scenario::A);
  CHECK(o.delta12 == 0.0);
  CHECK(o.delta21 == 0.0);
}

TEST_CASE("dead source blacks out the cycle") {
  const SystemParams p = unit_params();
  const RequiredEnergies req{1.0, 1.0, 1.0, 1.0};
  const OutageOutcome o = classify_outage({0.0, 10.0, 10.0}, req, p);
  CHECK(o.scenario == Scenario::D);
  CHECK(o.out_link1);
  CHECK(o.out_link2);
  CHECK(o.e_s1 == 0.0);
  CHECK(o.e_R2 == 0.0);
}

TEST_CASE("single-link service picks the smaller source requirement") {
  const SystemParams p = unit_params();
  // Source affords either link alone but not both.
  const RequiredEnergies cheaper2{3.0, 2.0, 1.0, 1.0};
  const OutageOutcome o2 = classify_outage({4.0, 10.0, 10.0}, cheaper2, p);
  CHECK(o2.scenario == Scenario::C);
  CHECK(o2.out_link1);
  CHECK_FALSE(o2.out_link2);
  CHECK(o2.e_s1 == 0.0);
  CHECK(o2.e_s2 == doctest::Approx(2.0));

  const RequiredEnergies tied{3.0, 3.0, 1.0, 1.0};
  const OutageOutcome o1 = classify_outage({4.0, 10.0, 10.0}, tied, p);
  CHECK(o1.scenario == Scenario::B);  // tie prefers link 1
  CHECK_FALSE(o1.out_link1);
  CHECK(o1.out_link2);
}

TEST_CASE("an idle relay donates its whole battery") {
  const SystemParams p = unit_params();
  // Link 2 is hopeless; R1 needs 5 with only 1 of its own, R2 holds 5.
  const RequiredEnergies req{1.0, 100.0, 5.0, 100.0};
  const OutageOutcome o = classify_outage({2.0, 1.0, 5.0}, req, p);
  CHECK(o.scenario == Scenario::B);
  CHECK(o.delta21 == doctest::Approx((5.0 - 1.0) / 0.9).epsilon(1e-12));
  CHECK(o.delta21 <= 5.0 + kTol);
}

TEST_CASE("transfers disabled when cooperation is off") {
  SystemParams p = unit_params();
  p.ec_enabled = false;
  const RequiredEnergies req{1.0, 1.0, 5.0, 1.0};  // R1 short on its own
  const OutageOutcome o = classify_outage({10.0, 1.0, 100.0}, req, p);
  CHECK(o.delta12 == 0.0);
  CHECK(o.delta21 == 0.0);
  CHECK(o.out_link1);
  CHECK_FALSE(o.out_link2);
}

TEST_CASE("cooperation never hurts on the same state") {
  std::mt19937_64 gen(61);
  SystemParams on = unit_params();
  SystemParams off = unit_params();
  off.ec_enabled = false;
  int helped = 0;
  for (int i = 0; i < 20000; ++i) {
    const double sigma_g = i % 2 == 0 ? 0.2 : 2.0;
    const RequiredEnergies req = random_req(gen, on, sigma_g);
    const EnergyState e = random_energy(gen);
    const OutageOutcome a = classify_outage(e, req, on);
    const OutageOutcome b = classify_outage(e, req, off);
    CHECK(a.out_link1 <= b.out_link1);
    CHECK(a.out_link2 <= b.out_link2);
    if (a.out_link1 < b.out_link1 || a.out_link2 < b.out_link2) ++helped;
  }
  CHECK(helped > 0);
}

TEST_CASE("scenarios partition every instance") {
  std::mt19937_64 gen(62);
  const SystemParams p = unit_params();
  for (int i = 0; i < 20000; ++i) {
    const RequiredEnergies req = random_req(gen, p, i % 2 == 0 ? 0.2 : 2.0);
    const EnergyState e = random_energy(gen);
    const OutageOutcome o = classify_outage(e, req, p);
    switch (o.scenario) {
      case Scenario::A:
        CHECK((!o.out_link1 && !o.out_link2));
        break;
      case Scenario::B:
        CHECK((!o.out_link1 && o.out_link2));
        break;
      case Scenario::C:
        CHECK((o.out_link1 && !o.out_link2));
        break;
      case Scenario::D:
        CHECK((o.out_link1 && o.out_link2));
        break;
    }
    CHECK_FALSE((o.delta12 > 0.0 && o.delta21 > 0.0));
    // consumption stays within budgets once transfers are applied
    CHECK(o.e_s1 + o.e_s2 <= e.E_S + kTol);
    CHECK(o.e_R1 <= e.E_R1 + p.gamma21 * o.delta21 - o.delta12 + kTol);
    CHECK(o.e_R2 <= e.E_R2 + p.gamma12 * o.delta12 - o.delta21 + kTol);
  }
}

}  // TEST_SUITE
