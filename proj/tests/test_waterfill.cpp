#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "ecrelay/model.hpp"
#include "ecrelay/waterfill.hpp"

using namespace ecrelay;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Brute-force reference: best sum rate over a dense grid of e1.
double grid_best(double N1, double N2, double budget, double cap1,
                 double cap2, int points) {
  double best = 0.0;
  for (int k = 0; k <= points; ++k) {
    const double e1 = budget * k / points;
    const double e2 = budget - e1;
    const double r = std::min(std::log2(1.0 + e1 / N1), cap1) +
                     std::min(std::log2(1.0 + e2 / N2), cap2);
    best = std::max(best, r);
  }
  return best;
}

}  // namespace

TEST_SUITE("waterfill") {

TEST_CASE("symmetric split") {
  const WaterfillResult r = waterfill_two(1.0, 1.0, 2.0);
  CHECK(r.e1 == doctest::Approx(1.0));
  CHECK(r.e2 == doctest::Approx(1.0));
  CHECK(r.water_level == doctest::Approx(2.0));
  CHECK(r.sum_rate == doctest::Approx(2.0));
}

TEST_CASE("weak channel stays dry") {
  // Verified against a dense grid over e1 below.
  const WaterfillResult r = waterfill_two(1.0, 2.0, 1.0);
  CHECK(r.e1 == doctest::Approx(1.0));
  CHECK(r.e2 == doctest::Approx(0.0));
  CHECK(r.water_level == doctest::Approx(2.0));
  CHECK(r.sum_rate == doctest::Approx(grid_best(1.0, 2.0, 1.0, kInf, kInf, 20000))
                          .epsilon(1e-8));
}

TEST_CASE("empty budget allocates nothing") {
  const WaterfillResult r = waterfill_two(1.0, 1.0, 0.0);
  CHECK(r.e1 == 0.0);
  CHECK(r.e2 == 0.0);
  CHECK(r.sum_rate == 0.0);
}

TEST_CASE("dead channels") {
  const WaterfillResult one = waterfill_two(kInf, 2.0, 3.0);
  CHECK(one.e1 == 0.0);
  CHECK(one.e2 == doctest::Approx(3.0));

  const WaterfillResult none = waterfill_two(kInf, kInf, 3.0);
  CHECK(none.e1 == 0.0);
  CHECK(none.e2 == 0.0);
  CHECK(none.sum_rate == 0.0);
}

TEST_CASE("invalid inputs throw") {
  CHECK_THROWS_AS(waterfill_two(1.0, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(waterfill_two(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(waterfill_two(-2.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(capped_waterfill_two(1.0, 1.0, 1.0, -0.5, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(capped_waterfill_two(1.0, 1.0, -1.0, 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("beats every split on a dense grid") {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> floor_u(0.05, 20.0);
  std::uniform_real_distribution<double> budget_u(0.0, 50.0);
  for (int i = 0; i < 60; ++i) {
    const double N1 = floor_u(gen);
    const double N2 = floor_u(gen);
    const double budget = budget_u(gen);
    const WaterfillResult r = waterfill_two(N1, N2, budget);
    CHECK(r.e1 >= 0.0);
    CHECK(r.e2 >= 0.0);
    CHECK(r.e1 + r.e2 == doctest::Approx(budget).epsilon(1e-12));
    if (r.e1 > 0.0 && r.e2 > 0.0) {
      CHECK(r.water_level - N1 == doctest::Approx(r.e1));
      CHECK(r.water_level - N2 == doctest::Approx(r.e2));
    }
    CHECK(r.sum_rate + 1e-9 >= grid_best(N1, N2, budget, kInf, kInf, 10000));
  }
}

TEST_CASE("caps bind and the rest of the budget stays unspent") {
  const CappedAllocation a = capped_waterfill_two(1.0, 1.0, 10.0, 1.0, 1.0);
  CHECK(a.e1 == doctest::Approx(1.0));
  CHECK(a.e2 == doctest::Approx(1.0));
  CHECK(a.sum_rate == doctest::Approx(2.0));
}

TEST_CASE("infinite caps reduce to plain water-filling exactly") {
  std::mt19937_64 gen(22);
  std::uniform_real_distribution<double> floor_u(0.05, 20.0);
  std::uniform_real_distribution<double> budget_u(0.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double N1 = floor_u(gen);
    const double N2 = floor_u(gen);
    const double budget = budget_u(gen);
    const WaterfillResult wf = waterfill_two(N1, N2, budget);
    const CappedAllocation a =
        capped_waterfill_two(N1, N2, budget, kInf, kInf);
    CHECK(a.e1 == wf.e1);  // bit-identical path
    CHECK(a.e2 == wf.e2);
    CHECK(a.sum_rate == wf.sum_rate);
  }
}

TEST_CASE("one binding cap, energy flows to the free link") {
  // Grid search over e1 at 1e-5 resolution pins the expected optimum.
  const CappedAllocation a = capped_waterfill_two(1.0, 2.0, 1.0, 0.5, kInf);
  const double e1_expected = std::exp2(0.5) - 1.0;
  CHECK(a.e1 == doctest::Approx(e1_expected).epsilon(1e-12));
  CHECK(a.e2 == doctest::Approx(1.0 - e1_expected).epsilon(1e-12));
  const double expected_rate = 0.5 + std::log2(1.0 + (1.0 - e1_expected) / 2.0);
  CHECK(a.sum_rate == doctest::Approx(expected_rate).epsilon(1e-12));
  CHECK(a.sum_rate + 1e-6 >= grid_best(1.0, 2.0, 1.0, 0.5, kInf, 100000));
}

TEST_CASE("optimal and minimal-energy on random capped instances") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> floor_u(0.05, 10.0);
  std::uniform_real_distribution<double> budget_u(0.0, 30.0);
  std::uniform_real_distribution<double> cap_u(0.0, 4.0);
  for (int i = 0; i < 80; ++i) {
    const double N1 = floor_u(gen);
    const double N2 = floor_u(gen);
    const double budget = budget_u(gen);
    const double cap1 = cap_u(gen);
    const double cap2 = cap_u(gen);
    const CappedAllocation a =
        capped_waterfill_two(N1, N2, budget, cap1, cap2);

    CHECK(a.e1 >= 0.0);
    CHECK(a.e2 >= 0.0);
    CHECK(a.e1 + a.e2 <= budget + kTol);
    CHECK(a.rate1 <= cap1 + 1e-12);
    CHECK(a.rate2 <= cap2 + 1e-12);
    // never spend past a cap
    CHECK(a.e1 <= (std::exp2(cap1) - 1.0) * N1 + kTol);
    CHECK(a.e2 <= (std::exp2(cap2) - 1.0) * N2 + kTol);
    // leftover budget only when every live link is saturated
    if (a.e1 + a.e2 < budget - kTol) {
      CHECK(a.rate1 == doctest::Approx(cap1).epsilon(1e-9));
      CHECK(a.rate2 == doctest::Approx(cap2).epsilon(1e-9));
    }
    // each link is either capped or at the residual water level
    const double resid1 = std::min(budget - a.e2, (std::exp2(cap1) - 1.0) * N1);
    const double resid2 = std::min(budget - a.e1, (std::exp2(cap2) - 1.0) * N2);
    if (std::abs(a.rate1 - cap1) > 1e-9 && a.e1 > 0.0)
      CHECK(a.e1 <= resid1 + kTol);
    if (std::abs(a.rate2 - cap2) > 1e-9 && a.e2 > 0.0)
      CHECK(a.e2 <= resid2 + kTol);

    CHECK(a.sum_rate + 2e-4 >= grid_best(N1, N2, budget, cap1, cap2, 20000));
  }
}

}  // TEST_SUITE
