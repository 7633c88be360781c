#include "ecrelay/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ecrelay/waterfill.hpp"

namespace ecrelay {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Rate ties below this resolve toward the smaller transfer (bits/s/Hz).
constexpr double kTieTol = 1e-12;

// Per-link constants: first hop h_sq over noise w_sq, second hop g_sq over
// noise wb_sq.
struct Link {
  double h_sq;
  double g_sq;
  double w_sq;
  double wb_sq;

  double first_floor() const { return h_sq > 0.0 ? w_sq / h_sq : kInf; }
  double second_floor() const { return g_sq > 0.0 ? wb_sq / g_sq : kInf; }
};

Link link1_of(const ChannelRealization& ch, const SystemParams& p) {
  return {ch.h1_sq, ch.g1_sq, p.sigma_w1_sq, p.sigma_wb1_sq};
}

Link link2_of(const ChannelRealization& ch, const SystemParams& p) {
  return {ch.h2_sq, ch.g2_sq, p.sigma_w2_sq, p.sigma_wb2_sq};
}

// Relay energy matching the first-hop rate; +inf when the second hop is
// dead while the first carries rate.
double matched_relay(double e_s, const Link& l) {
  if (e_s <= 0.0 || l.h_sq <= 0.0) return 0.0;
  if (l.g_sq <= 0.0) return kInf;
  return e_s * (l.h_sq * l.wb_sq) / (l.g_sq * l.w_sq);
}

// Source energy matching the second-hop rate; +inf when the first hop is
// dead while the second carries rate.
double matched_source(double e_R, const Link& l) {
  if (e_R <= 0.0 || l.g_sq <= 0.0) return 0.0;
  if (l.h_sq <= 0.0) return kInf;
  return e_R * (l.g_sq * l.w_sq) / (l.h_sq * l.wb_sq);
}

// Relay energies when the second hop spends everything at transfer delta.
struct FullSpend {
  double eR1;
  double eR2;
};

FullSpend full_spend(Direction dir, const EnergyState& e,
                     const SystemParams& p, double delta) {
  FullSpend fs;
  if (dir == Direction::R1toR2) {
    fs.eR1 = std::max(0.0, e.E_R1 - delta);
    fs.eR2 = std::max(0.0, e.E_R2 + p.gamma12 * delta);
  } else {
    fs.eR1 = std::max(0.0, e.E_R1 + p.gamma21 * delta);
    fs.eR2 = std::max(0.0, e.E_R2 - delta);
  }
  return fs;
}

struct Inner {
  CappedAllocation alloc;
  FullSpend fs;
};

// Source allocation given delta: water-fill E_S with per-link rate caps set
// by the full-spend second hop. alloc.sum_rate is the cycle rate F(delta).
Inner eval_inner(Direction dir, double delta, const EnergyState& e,
                 const SystemParams& p, const Link& l1, const Link& l2) {
  Inner in;
  in.fs = full_spend(dir, e, p, delta);
  const double cap1 = rate_from_floor(in.fs.eR1, l1.second_floor());
  const double cap2 = rate_from_floor(in.fs.eR2, l2.second_floor());
  in.alloc = capped_waterfill_two(l1.first_floor(), l2.first_floor(), e.E_S,
                                  cap1, cap2);
  return in;
}

void set_delta(CycleSolution& s, Direction dir, double delta) {
  if (dir == Direction::R1toR2)
    s.delta12 = delta;
  else
    s.delta21 = delta;
}

void finish_rates(CycleSolution& s, const Link& l1, const Link& l2) {
  s.rate1 = std::min(rate_from_floor(s.e_s1, l1.first_floor()),
                     rate_from_floor(s.e_R1, l1.second_floor()));
  s.rate2 = std::min(rate_from_floor(s.e_s2, l2.first_floor()),
                     rate_from_floor(s.e_R2, l2.second_floor()));
  s.c_total = s.rate1 + s.rate2;
}

// B2/B4 style: source energies from the capped fill, relays spend only the
// matched energy (equal to the full spend exactly where the cap binds).
CycleSolution build_matched(Direction dir, double delta, const Inner& in,
                            const Link& l1, const Link& l2, CaseLabel label) {
  CycleSolution s;
  s.case_label = label;
  s.e_s1 = in.alloc.e1;
  s.e_s2 = in.alloc.e2;
  s.e_R1 = std::min(matched_relay(s.e_s1, l1), in.fs.eR1);
  s.e_R2 = std::min(matched_relay(s.e_s2, l2), in.fs.eR2);
  set_delta(s, dir, delta);
  finish_rates(s, l1, l2);
  return s;
}

// B1/B3 style: relays with a live second hop exhaust the full spend, the
// source pays exactly the matched energies.
CycleSolution build_full_spend(Direction dir, double delta,
                               const FullSpend& fs, double es1, double es2,
                               const Link& l1, const Link& l2,
                               CaseLabel label) {
  CycleSolution s;
  s.case_label = label;
  s.e_s1 = es1;
  s.e_s2 = es2;
  s.e_R1 = l1.g_sq > 0.0 ? fs.eR1 : 0.0;
  s.e_R2 = l2.g_sq > 0.0 ? fs.eR2 : 0.0;
  set_delta(s, dir, delta);
  finish_rates(s, l1, l2);
  return s;
}

// A cycle with no achievable rate collapses to the all-zero solution.
CycleSolution degenerate_or(CycleSolution s) {
  if (!(s.c_total >= kZeroRate)) return CycleSolution{};
  return s;
}

DirectionalSolution solve_direction(Direction dir, const EnergyState& e,
                                    const ChannelRealization& ch,
                                    const SystemParams& p, const Link& l1,
                                    const Link& l2) {
  const double dbar = delta_unconstrained(dir, e, ch, p);
  const FullSpend fs = full_spend(dir, e, p, dbar);
  const double es1 = matched_source(fs.eR1, l1);
  const double es2 = matched_source(fs.eR2, l2);
  if (es1 + es2 <= e.E_S + kTol) {
    const CaseLabel label =
        dir == Direction::R1toR2 ? CaseLabel::B1 : CaseLabel::B3;
    return {dbar, build_full_spend(dir, dbar, fs, es1, es2, l1, l2, label)};
  }
  return search_delta(dir, e, ch, p);
}

}  // namespace

double required_relay_energy(double e_s, double h_sq, double g_sq,
                             double sigma_w_sq, double sigma_wb_sq) {
  if (!(sigma_w_sq > 0.0) || !(sigma_wb_sq > 0.0))
    throw std::invalid_argument("required_relay_energy: noise must be > 0");
  if (e_s < 0.0 || h_sq < 0.0 || g_sq < 0.0)
    throw std::invalid_argument("required_relay_energy: negative input");
  if (e_s == 0.0 || h_sq == 0.0) return 0.0;
  if (g_sq == 0.0)
    throw std::domain_error(
        "required_relay_energy: second hop dead, first-hop rate unmatchable");
  return e_s * (h_sq * sigma_wb_sq) / (g_sq * sigma_w_sq);
}

double required_source_energy(double e_R, double h_sq, double g_sq,
                              double sigma_w_sq, double sigma_wb_sq) {
  if (!(sigma_w_sq > 0.0) || !(sigma_wb_sq > 0.0))
    throw std::invalid_argument("required_source_energy: noise must be > 0");
  if (e_R < 0.0 || h_sq < 0.0 || g_sq < 0.0)
    throw std::invalid_argument("required_source_energy: negative input");
  if (e_R == 0.0 || g_sq == 0.0) return 0.0;
  if (h_sq == 0.0)
    throw std::domain_error(
        "required_source_energy: first hop dead, second-hop rate unmatchable");
  return e_R * (g_sq * sigma_w_sq) / (h_sq * sigma_wb_sq);
}

double delta_unconstrained(Direction dir, const EnergyState& energy,
                           const ChannelRealization& ch,
                           const SystemParams& params) {
  if (dir == Direction::None)
    throw std::invalid_argument("delta_unconstrained: direction must name a donor");
  const bool from_r1 = dir == Direction::R1toR2;
  const double donor_e = from_r1 ? energy.E_R1 : energy.E_R2;
  const double recv_e = from_r1 ? energy.E_R2 : energy.E_R1;
  const double g_d = from_r1 ? ch.g1_sq : ch.g2_sq;
  const double g_r = from_r1 ? ch.g2_sq : ch.g1_sq;
  const double n_d = from_r1 ? params.sigma_wb1_sq : params.sigma_wb2_sq;
  const double n_r = from_r1 ? params.sigma_wb2_sq : params.sigma_wb1_sq;
  const double gamma = from_r1 ? params.gamma12 : params.gamma21;

  if (donor_e <= 0.0) return 0.0;
  if (g_d <= 0.0 && g_r <= 0.0) return 0.0;  // no live second hop anywhere

  // Stationary point of
  //   log2(1 + g_d (E_d - d) / n_d) + log2(1 + g_r (E_r + gamma d) / n_r).
  // A single dead link drives the first term to +-inf and the clamp picks
  // the right endpoint.
  const double raw =
      (gamma * g_r * n_d - g_d * n_r) / (2.0 * gamma * g_d * g_r) +
      (gamma * donor_e - recv_e) / (2.0 * gamma);
  return std::clamp(raw, 0.0, donor_e);
}

DirectionalSolution search_delta(Direction dir, const EnergyState& energy,
                                 const ChannelRealization& ch,
                                 const SystemParams& params) {
  if (dir == Direction::None)
    throw std::invalid_argument("search_delta: direction must name a donor");
  const Link l1 = link1_of(ch, params);
  const Link l2 = link2_of(ch, params);
  const double donor_e =
      dir == Direction::R1toR2 ? energy.E_R1 : energy.E_R2;

  const auto objective = [&](double d) {
    return eval_inner(dir, d, energy, params, l1, l2).alloc.sum_rate;
  };

  double best_d = 0.0;
  double best_f = objective(0.0);
  if (donor_e > 0.0) {
    constexpr int kGrid = 1024;
    for (int k = 1; k <= kGrid; ++k) {
      const double d = donor_e * k / kGrid;
      const double f = objective(d);
      if (f > best_f) {  // strict, so the smallest grid maximizer wins
        best_f = f;
        best_d = d;
      }
    }

    // Golden-section refinement between the neighbors of the best grid point.
    const double step = donor_e / kGrid;
    double a = std::max(0.0, best_d - step);
    double b = std::min(donor_e, best_d + step);
    constexpr double kGolden = 0.6180339887498949;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > 1e-9) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kGolden * (b - a);
        fc = objective(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kGolden * (b - a);
        fd = objective(d);
      }
      const double cand_d = fc >= fd ? c : d;
      const double cand_f = std::max(fc, fd);
      if (cand_f > best_f) {
        best_f = cand_f;
        best_d = cand_d;
      }
    }

    // The objective is concave, so its maximizers form an interval; move to
    // its left edge so ties spend the least transfer.
    if (best_d > 0.0) {
      const double target = best_f - kTieTol;
      if (objective(0.0) >= target) {
        best_d = 0.0;
      } else {
        double lo = 0.0;  // objective(lo) < target
        double hi = best_d;
        while (hi - lo > 1e-9) {
          const double mid = 0.5 * (lo + hi);
          if (objective(mid) >= target)
            hi = mid;
          else
            lo = mid;
        }
        best_d = hi;
      }
    }
  }

  const Inner in = eval_inner(dir, best_d, energy, params, l1, l2);
  const CaseLabel label =
      dir == Direction::R1toR2 ? CaseLabel::B2 : CaseLabel::B4;
  return {best_d, build_matched(dir, best_d, in, l1, l2, label)};
}

CycleSolution solve_cycle(const EnergyState& energy,
                          const ChannelRealization& ch,
                          const SystemParams& params) {
  if (!params.ec_enabled) return solve_cycle_no_ec(energy, ch, params);

  const Link l1 = link1_of(ch, params);
  const Link l2 = link2_of(ch, params);

  // First hop optimized alone; accept if the second hop can carry it.
  const WaterfillResult wf =
      waterfill_two(l1.first_floor(), l2.first_floor(), energy.E_S);
  const double req1 = matched_relay(wf.e1, l1);
  const double req2 = matched_relay(wf.e2, l2);

  CycleSolution s;
  bool a_case = true;
  if (req1 <= energy.E_R1 + kTol && req2 <= energy.E_R2 + kTol) {
    s.case_label = CaseLabel::A1;
  } else if (req1 <= energy.E_R1 + kTol &&
             req2 <= energy.E_R2 +
                         params.gamma12 * (energy.E_R1 - req1) + kTol) {
    s.case_label = CaseLabel::A2;
    s.delta12 = std::max(0.0, req2 - energy.E_R2) / params.gamma12;
  } else if (req2 <= energy.E_R2 + kTol &&
             req1 <= energy.E_R1 +
                         params.gamma21 * (energy.E_R2 - req2) + kTol) {
    s.case_label = CaseLabel::A3;
    s.delta21 = std::max(0.0, req1 - energy.E_R1) / params.gamma21;
  } else {
    a_case = false;
  }
  if (a_case) {
    s.e_s1 = wf.e1;
    s.e_s2 = wf.e2;
    s.e_R1 = std::min(
        req1, energy.E_R1 - s.delta12 + params.gamma21 * s.delta21);
    s.e_R2 = std::min(
        req2, energy.E_R2 - s.delta21 + params.gamma12 * s.delta12);
    // First-hop rates are achieved; c_total equals the water-filling bound.
    s.rate1 = rate_from_floor(wf.e1, l1.first_floor());
    s.rate2 = rate_from_floor(wf.e2, l2.first_floor());
    s.c_total = s.rate1 + s.rate2;
    return degenerate_or(s);
  }

  // Second hop is the bottleneck: solve both transfer directions.
  const DirectionalSolution d12 =
      solve_direction(Direction::R1toR2, energy, ch, params, l1, l2);
  const DirectionalSolution d21 =
      solve_direction(Direction::R2toR1, energy, ch, params, l1, l2);

  const double c12 = d12.sol.c_total;
  const double c21 = d21.sol.c_total;
  if (std::abs(c12 - c21) <= kTieTol) {
    // Tie between directions: prefer no transfer when it attains the rate.
    if (d12.delta == 0.0) return degenerate_or(d12.sol);
    if (d21.delta == 0.0) return degenerate_or(d21.sol);
    const Inner in0 = eval_inner(Direction::R1toR2, 0.0, energy, params, l1, l2);
    if (in0.alloc.sum_rate >= std::max(c12, c21) - kTieTol) {
      const double demand0 = matched_source(energy.E_R1, l1) +
                             matched_source(energy.E_R2, l2);
      const CaseLabel label =
          demand0 <= energy.E_S + kTol ? CaseLabel::B1 : CaseLabel::B2;
      if (label == CaseLabel::B1) {
        const FullSpend fs0{energy.E_R1, energy.E_R2};
        return degenerate_or(build_full_spend(
            Direction::R1toR2, 0.0, fs0, matched_source(energy.E_R1, l1),
            matched_source(energy.E_R2, l2), l1, l2, label));
      }
      return degenerate_or(
          build_matched(Direction::R1toR2, 0.0, in0, l1, l2, label));
    }
    return degenerate_or(d12.sol);
  }
  return degenerate_or(c12 > c21 ? d12.sol : d21.sol);
}

CycleSolution solve_cycle_no_ec(const EnergyState& energy,
                                const ChannelRealization& ch,
                                const SystemParams& params) {
  const Link l1 = link1_of(ch, params);
  const Link l2 = link2_of(ch, params);
  const double cap1 = rate_from_floor(energy.E_R1, l1.second_floor());
  const double cap2 = rate_from_floor(energy.E_R2, l2.second_floor());
  const CappedAllocation alloc = capped_waterfill_two(
      l1.first_floor(), l2.first_floor(), energy.E_S, cap1, cap2);

  CycleSolution s;
  s.e_s1 = alloc.e1;
  s.e_s2 = alloc.e2;
  s.e_R1 = std::min(matched_relay(s.e_s1, l1), energy.E_R1);
  s.e_R2 = std::min(matched_relay(s.e_s2, l2), energy.E_R2);
  finish_rates(s, l1, l2);

  // Label by analogy with the transfer-enabled taxonomy at delta = 0.
  const WaterfillResult wf =
      waterfill_two(l1.first_floor(), l2.first_floor(), energy.E_S);
  const double req1 = matched_relay(wf.e1, l1);
  const double req2 = matched_relay(wf.e2, l2);
  if (req1 <= energy.E_R1 + kTol && req2 <= energy.E_R2 + kTol) {
    s.case_label = CaseLabel::A1;
  } else {
    const double demand0 =
        matched_source(energy.E_R1, l1) + matched_source(energy.E_R2, l2);
    s.case_label =
        demand0 <= energy.E_S + kTol ? CaseLabel::B1 : CaseLabel::B2;
  }
  return degenerate_or(s);
}

SavedEnergy energy_saved(const EnergyState& energy, const CycleSolution& sol) {
  const double s_S = energy.E_S - (sol.e_s1 + sol.e_s2);
  const double s_R1 = energy.E_R1 - sol.e_R1 - sol.delta12;
  const double s_R2 = energy.E_R2 - sol.e_R2 - sol.delta21;
  // A receiver may legitimately dip below zero by at most the energy it
  // received (gamma <= 1 bounds it by the raw transfer); anything further
  // means the solution overspends.
  if (s_S < -kTol || s_R1 < -sol.delta21 - kTol || s_R2 < -sol.delta12 - kTol)
    throw std::logic_error("energy_saved: solution overspends a budget");
  return {std::max(0.0, s_S), std::max(0.0, s_R1), std::max(0.0, s_R2)};
}

std::vector<std::string> check_feasibility(const EnergyState& energy,
                                           const ChannelRealization& ch,
                                           const SystemParams& params,
                                           const CycleSolution& sol) {
  std::vector<std::string> v;
  const auto fail = [&v](const char* m) { v.emplace_back(m); };

  if (sol.delta12 > kTol && sol.delta21 > kTol)
    fail("both transfer directions nonzero");
  if (sol.delta12 < -kTol || sol.delta12 > energy.E_R1 + kTol)
    fail("delta12 outside [0, E_R1]");
  if (sol.delta21 < -kTol || sol.delta21 > energy.E_R2 + kTol)
    fail("delta21 outside [0, E_R2]");
  if (sol.e_s1 < -kTol || sol.e_s2 < -kTol) fail("negative source energy");
  if (sol.e_s1 + sol.e_s2 > energy.E_S + kTol) fail("source budget exceeded");
  if (sol.e_R1 < -kTol) fail("negative relay 1 energy");
  if (sol.e_R2 < -kTol) fail("negative relay 2 energy");
  if (sol.e_R1 >
      energy.E_R1 - sol.delta12 + params.gamma21 * sol.delta21 + kTol)
    fail("relay 1 budget exceeded");
  if (sol.e_R2 >
      energy.E_R2 - sol.delta21 + params.gamma12 * sol.delta12 + kTol)
    fail("relay 2 budget exceeded");
  if (std::abs(sol.c_total - (sol.rate1 + sol.rate2)) > 1e-12)
    fail("c_total is not rate1 + rate2");

  const Link l1 = link1_of(ch, params);
  const Link l2 = link2_of(ch, params);
  const double c_s1 = rate_from_floor(sol.e_s1, l1.first_floor());
  const double c_r1 = rate_from_floor(sol.e_R1, l1.second_floor());
  const double c_s2 = rate_from_floor(sol.e_s2, l2.first_floor());
  const double c_r2 = rate_from_floor(sol.e_R2, l2.second_floor());
  if (sol.rate1 > 0.0 && std::abs(c_s1 - c_r1) > 1e-6)
    fail("link 1 hop rates not matched");
  if (sol.rate2 > 0.0 && std::abs(c_s2 - c_r2) > 1e-6)
    fail("link 2 hop rates not matched");
  if (std::abs(sol.rate1 - std::min(c_s1, c_r1)) > 1e-9)
    fail("rate1 inconsistent with allocation");
  if (std::abs(sol.rate2 - std::min(c_s2, c_r2)) > 1e-9)
    fail("rate2 inconsistent with allocation");
  return v;
}

}  // namespace ecrelay
