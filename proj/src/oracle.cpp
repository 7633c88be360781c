#include "ecrelay/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ecrelay/waterfill.hpp"

namespace ecrelay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Caps {
  double eR1;
  double eR2;
  double cap1;
  double cap2;
};

Caps caps_at(Direction dir, double delta, const EnergyState& e,
             const ChannelRealization& ch, const SystemParams& p) {
  Caps c;
  if (dir == Direction::R1toR2) {
    c.eR1 = std::max(0.0, e.E_R1 - delta);
    c.eR2 = std::max(0.0, e.E_R2 + p.gamma12 * delta);
  } else {
    c.eR1 = std::max(0.0, e.E_R1 + p.gamma21 * delta);
    c.eR2 = std::max(0.0, e.E_R2 - delta);
  }
  const double f1 = ch.g1_sq > 0.0 ? p.sigma_wb1_sq / ch.g1_sq : kInf;
  const double f2 = ch.g2_sq > 0.0 ? p.sigma_wb2_sq / ch.g2_sq : kInf;
  c.cap1 = rate_from_floor(c.eR1, f1);
  c.cap2 = rate_from_floor(c.eR2, f2);
  return c;
}

}  // namespace

CycleSolution oracle_solve(const EnergyState& energy,
                           const ChannelRealization& ch,
                           const SystemParams& params, int grid_n) {
  if (grid_n < 64)
    throw std::invalid_argument("oracle_solve: grid_n must be >= 64");

  const double n1 = ch.h1_sq > 0.0 ? params.sigma_w1_sq / ch.h1_sq : kInf;
  const double n2 = ch.h2_sq > 0.0 ? params.sigma_w2_sq / ch.h2_sq : kInf;

  Direction best_dir = Direction::R1toR2;
  double best_delta = 0.0;
  double best_rate = -1.0;
  CappedAllocation best_alloc;
  Caps best_caps{};

  for (const Direction dir : {Direction::R1toR2, Direction::R2toR1}) {
    const double donor =
        dir == Direction::R1toR2 ? energy.E_R1 : energy.E_R2;
    for (int k = 0; k <= grid_n; ++k) {
      const double delta = donor * k / grid_n;
      const Caps c = caps_at(dir, delta, energy, ch, params);
      const CappedAllocation a =
          capped_waterfill_two(n1, n2, energy.E_S, c.cap1, c.cap2);
      // Strict improvement keeps delta = 0 and R1->R2 preferred on ties.
      if (a.sum_rate > best_rate) {
        best_rate = a.sum_rate;
        best_dir = dir;
        best_delta = delta;
        best_alloc = a;
        best_caps = c;
      }
      if (donor <= 0.0) break;  // the whole grid collapses onto delta = 0
    }
  }

  CycleSolution s;
  if (!(best_rate >= kZeroRate)) return s;  // nothing achievable

  s.e_s1 = best_alloc.e1;
  s.e_s2 = best_alloc.e2;
  // Matched relay spend, never past the full-spend budget at this delta.
  const double m1 = (s.e_s1 > 0.0 && ch.h1_sq > 0.0 && ch.g1_sq > 0.0)
                        ? s.e_s1 * (ch.h1_sq * params.sigma_wb1_sq) /
                              (ch.g1_sq * params.sigma_w1_sq)
                        : 0.0;
  const double m2 = (s.e_s2 > 0.0 && ch.h2_sq > 0.0 && ch.g2_sq > 0.0)
                        ? s.e_s2 * (ch.h2_sq * params.sigma_wb2_sq) /
                              (ch.g2_sq * params.sigma_w2_sq)
                        : 0.0;
  s.e_R1 = std::min(m1, best_caps.eR1);
  s.e_R2 = std::min(m2, best_caps.eR2);
  if (best_dir == Direction::R1toR2)
    s.delta12 = best_delta;
  else
    s.delta21 = best_delta;
  s.rate1 = best_alloc.rate1;
  s.rate2 = best_alloc.rate2;
  s.c_total = best_alloc.sum_rate;
  s.case_label = best_delta == 0.0
                     ? CaseLabel::A1
                     : (best_dir == Direction::R1toR2 ? CaseLabel::B2
                                                      : CaseLabel::B4);
  return s;
}

}  // namespace ecrelay
