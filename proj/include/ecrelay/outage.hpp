#pragma once

#include "ecrelay/model.hpp"

namespace ecrelay {

/// Fixed target rates at the two destinations, bits/s/Hz.
struct TargetRates {
  double r1_star = 1.5;
  double r2_star = 1.5;

  void validate() const;  // throws std::invalid_argument
};

enum class Scenario { A, B, C, D };
const char* to_string(Scenario s);

/// Per-node energy needed to hit the targets this cycle; +inf on a dead
/// channel.
struct RequiredEnergies {
  double e_s1 = 0.0;
  double e_s2 = 0.0;
  double e_R1 = 0.0;
  double e_R2 = 0.0;
};

RequiredEnergies required_energies(const TargetRates& targets,
                                   const ChannelRealization& ch,
                                   const SystemParams& params);

/// Scenario A serves both links, B serves only link 1, C serves only
/// link 2, D serves none. Consumption equals the requirements of the served
/// links; the donor relay additionally loses the raw transfer amount.
struct OutageOutcome {
  bool out_link1 = true;
  bool out_link2 = true;
  double delta12 = 0.0;
  double delta21 = 0.0;
  double e_s1 = 0.0;  // consumed energies
  double e_s2 = 0.0;
  double e_R1 = 0.0;
  double e_R2 = 0.0;
  Scenario scenario = Scenario::D;
};

/// Deterministic scenario classification. Serving both links lets a relay
/// with surplus beyond its own requirement cover the other's deficit
/// (transfer = deficit / efficiency); when only one link can be served, the
/// idle relay's whole battery counts as surplus. If either single link is
/// individually feasible but not both jointly, the one with the smaller
/// source requirement wins (tie: link 1). Transfers are disabled when
/// params.ec_enabled is false.
OutageOutcome classify_outage(const EnergyState& energy,
                              const RequiredEnergies& req,
                              const SystemParams& params);

}  // namespace ecrelay
