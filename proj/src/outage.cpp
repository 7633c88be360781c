#include "ecrelay/outage.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ecrelay {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double needed(double rate_target, double noise_var, double gain_sq) {
  if (rate_target <= 0.0) return 0.0;
  if (gain_sq <= 0.0) return kInf;
  return noise_var * (std::exp2(rate_target) - 1.0) / gain_sq;
}
}  // namespace

void TargetRates::validate() const {
  if (!std::isfinite(r1_star) || r1_star < 0.0 || !std::isfinite(r2_star) ||
      r2_star < 0.0)
    throw std::invalid_argument("TargetRates: targets must be finite and >= 0");
}

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::A: return "A";
    case Scenario::B: return "B";
    case Scenario::C: return "C";
    case Scenario::D: return "D";
  }
  return "?";
}

RequiredEnergies required_energies(const TargetRates& targets,
                                   const ChannelRealization& ch,
                                   const SystemParams& params) {
  targets.validate();
  RequiredEnergies r;
  r.e_s1 = needed(targets.r1_star, params.sigma_w1_sq, ch.h1_sq);
  r.e_s2 = needed(targets.r2_star, params.sigma_w2_sq, ch.h2_sq);
  r.e_R1 = needed(targets.r1_star, params.sigma_wb1_sq, ch.g1_sq);
  r.e_R2 = needed(targets.r2_star, params.sigma_wb2_sq, ch.g2_sq);
  return r;
}

OutageOutcome classify_outage(const EnergyState& energy,
                              const RequiredEnergies& req,
                              const SystemParams& params) {
  const bool ec = params.ec_enabled;
  OutageOutcome out;

  // 1) Serve both links. Each relay must cover its own requirement; a single
  //    transfer may close one relay's deficit from the other's surplus.
  if (req.e_s1 + req.e_s2 <= energy.E_S + kTol) {
    const double d1 = req.e_R1 - energy.E_R1;
    const double d2 = req.e_R2 - energy.E_R2;
    bool ok = false;
    double delta12 = 0.0;
    double delta21 = 0.0;
    if (d1 <= kTol && d2 <= kTol) {
      ok = true;
    } else if (ec && d1 > kTol && d2 <= kTol) {
      delta21 = d1 / params.gamma21;
      ok = energy.E_R2 - req.e_R2 >= delta21 - kTol;
    } else if (ec && d2 > kTol && d1 <= kTol) {
      delta12 = d2 / params.gamma12;
      ok = energy.E_R1 - req.e_R1 >= delta12 - kTol;
    }
    if (ok) {
      out.scenario = Scenario::A;
      out.out_link1 = false;
      out.out_link2 = false;
      out.delta12 = delta12;
      out.delta21 = delta21;
      out.e_s1 = req.e_s1;
      out.e_s2 = req.e_s2;
      out.e_R1 = req.e_R1;
      out.e_R2 = req.e_R2;
      return out;
    }
  }

  // 2) Serve exactly one link. Links feasible on their own battery come
  //    first (whatever works without transfers must stay served when
  //    transfers are enabled); the idle relay's whole battery backs the
  //    transfer tier. Within a tier the smaller source requirement wins,
  //    ties go to link 1.
  const bool own1 = req.e_s1 <= energy.E_S + kTol &&
                    req.e_R1 <= energy.E_R1 + kTol;
  const bool own2 = req.e_s2 <= energy.E_S + kTol &&
                    req.e_R2 <= energy.E_R2 + kTol;
  bool can1 = own1;
  bool can2 = own2;
  if (!own1 && !own2 && ec) {
    can1 = req.e_s1 <= energy.E_S + kTol &&
           req.e_R1 <= energy.E_R1 + params.gamma21 * energy.E_R2 + kTol;
    can2 = req.e_s2 <= energy.E_S + kTol &&
           req.e_R2 <= energy.E_R2 + params.gamma12 * energy.E_R1 + kTol;
  }
  const bool serve1 = can1 && (!can2 || req.e_s1 <= req.e_s2);
  if (serve1) {
    out.scenario = Scenario::B;
    out.out_link1 = false;
    out.delta21 = std::max(0.0, req.e_R1 - energy.E_R1) / params.gamma21;
    out.e_s1 = req.e_s1;
    out.e_R1 = req.e_R1;
    return out;
  }
  if (can2) {
    out.scenario = Scenario::C;
    out.out_link2 = false;
    out.delta12 = std::max(0.0, req.e_R2 - energy.E_R2) / params.gamma12;
    out.e_s2 = req.e_s2;
    out.e_R2 = req.e_R2;
    return out;
  }

  // 3) Nothing can be served; every node stays off this cycle.
  return out;
}

}  // namespace ecrelay
