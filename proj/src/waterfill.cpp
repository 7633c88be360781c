#include "ecrelay/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ecrelay {

double rate_from_floor(double e, double N) { return std::log2(1.0 + e / N); }

namespace {

void check_floor(double N, const char* name) {
  if (std::isnan(N) || !(N > 0.0))
    throw std::invalid_argument(std::string("waterfill: ") + name +
                                " must be > 0 (or +inf for a dead channel)");
}

}  // namespace

WaterfillResult waterfill_two(double N1, double N2, double budget) {
  if (std::isnan(budget) || budget < 0.0)
    throw std::invalid_argument("waterfill_two: budget must be >= 0");
  check_floor(N1, "N1");
  check_floor(N2, "N2");

  WaterfillResult r;
  const bool live1 = std::isfinite(N1);
  const bool live2 = std::isfinite(N2);
  if (!live1 && !live2) return r;  // nowhere to put the budget

  if (live1 && live2) {
    const double nu = 0.5 * (budget + N1 + N2);
    if (nu >= std::max(N1, N2)) {  // both channels reach the water level
      r.e1 = nu - N1;
      r.e2 = nu - N2;
      r.water_level = nu;
      r.sum_rate = rate_from_floor(r.e1, N1) + rate_from_floor(r.e2, N2);
      return r;
    }
  }
  // Single active channel: the lower floor takes everything.
  if (N1 <= N2) {
    r.e1 = budget;
    r.water_level = N1 + budget;
  } else {
    r.e2 = budget;
    r.water_level = N2 + budget;
  }
  r.sum_rate = rate_from_floor(r.e1, N1) + rate_from_floor(r.e2, N2);
  return r;
}

CappedAllocation capped_waterfill_two(double N1, double N2, double budget,
                                      double cap1, double cap2) {
  if (std::isnan(budget) || budget < 0.0)
    throw std::invalid_argument("capped_waterfill_two: budget must be >= 0");
  if (std::isnan(cap1) || cap1 < 0.0 || std::isnan(cap2) || cap2 < 0.0)
    throw std::invalid_argument("capped_waterfill_two: caps must be >= 0");
  check_floor(N1, "N1");
  check_floor(N2, "N2");

  CappedAllocation out;
  // A link is worth filling only if its channel is live and its cap allows
  // a positive rate.
  const bool live1 = std::isfinite(N1) && cap1 > 0.0;
  const bool live2 = std::isfinite(N2) && cap2 > 0.0;
  if (!live1 && !live2) return out;

  // Exact energy at which link i attains its cap.
  const double ecap1 = live1 ? (std::exp2(cap1) - 1.0) * N1 : 0.0;
  const double ecap2 = live2 ? (std::exp2(cap2) - 1.0) * N2 : 0.0;

  double e1 = 0.0;
  double e2 = 0.0;
  if (live1 && live2) {
    const WaterfillResult wf = waterfill_two(N1, N2, budget);
    e1 = wf.e1;
    e2 = wf.e2;
    if (e1 > ecap1 && e2 > ecap2) {
      e1 = ecap1;
      e2 = ecap2;
    } else if (e1 > ecap1) {
      e1 = ecap1;
      e2 = std::min(budget - e1, ecap2);
    } else if (e2 > ecap2) {
      e2 = ecap2;
      e1 = std::min(budget - e2, ecap1);
    }
  } else if (live1) {
    e1 = std::min(budget, ecap1);
  } else {
    e2 = std::min(budget, ecap2);
  }

  out.e1 = e1;
  out.e2 = e2;
  out.rate1 = live1 ? std::min(rate_from_floor(e1, N1), cap1) : 0.0;
  out.rate2 = live2 ? std::min(rate_from_floor(e2, N2), cap2) : 0.0;
  out.sum_rate = out.rate1 + out.rate2;
  return out;
}

}  // namespace ecrelay
