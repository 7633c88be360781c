#pragma once

#include <string>
#include <vector>

#include "ecrelay/model.hpp"

namespace ecrelay {

/// Relay energy that matches the second-hop rate to the first-hop rate
/// produced by source energy e_s:
///   e_R = e_s * h_sq * sigma_wb_sq / (g_sq * sigma_w_sq).
/// Throws std::domain_error when the second hop is dead (g_sq == 0) while
/// the first hop carries a positive rate.
double required_relay_energy(double e_s, double h_sq, double g_sq,
                             double sigma_w_sq, double sigma_wb_sq);

/// Exact inverse: source energy matching a given relay energy. Throws
/// std::domain_error when the first hop is dead while the second hop
/// carries a positive rate.
double required_source_energy(double e_R, double h_sq, double g_sq,
                              double sigma_w_sq, double sigma_wb_sq);

/// Stationary point of the full-spend second-hop sum rate in the transfer
/// amount, clamped to [0, E_donor]. Throws std::invalid_argument for
/// Direction::None.
double delta_unconstrained(Direction dir, const EnergyState& energy,
                           const ChannelRealization& ch,
                           const SystemParams& params);

struct DirectionalSolution {
  double delta = 0.0;
  CycleSolution sol;
};

/// One-dimensional search over the transfer amount when the source budget
/// cannot support the unconstrained second-hop optimum. The objective
/// F(delta) — source water-filling capped by the full-spend second-hop
/// rates — is concave; a 1024-point grid plus golden-section refinement
/// finds the maximum, and ties resolve to the smallest transfer.
DirectionalSolution search_delta(Direction dir, const EnergyState& energy,
                                 const ChannelRealization& ch,
                                 const SystemParams& params);

/// Per-cycle solver: water-fill the source and accept the closed form when
/// the second hop can support it (cases A1-A3), otherwise solve each
/// transfer direction (B1-B4) and keep the better one. A cycle with no
/// achievable rate returns the all-zero Degenerate solution.
CycleSolution solve_cycle(const EnergyState& energy,
                          const ChannelRealization& ch,
                          const SystemParams& params);

/// Baseline with both transfers forced to zero: capped water-filling of the
/// source against the relays' own budgets; relays spend only the matched
/// energy.
CycleSolution solve_cycle_no_ec(const EnergyState& energy,
                                const ChannelRealization& ch,
                                const SystemParams& params);

/// Energy banked for the next cycle. Throws std::logic_error if the
/// solution overspends a budget beyond tolerance.
SavedEnergy energy_saved(const EnergyState& energy, const CycleSolution& sol);

/// Audits a solution against the cycle constraints (budgets, transfer
/// bounds, rate matching, rate accounting). Returns one message per
/// violation; empty means feasible.
std::vector<std::string> check_feasibility(const EnergyState& energy,
                                           const ChannelRealization& ch,
                                           const SystemParams& params,
                                           const CycleSolution& sol);

}  // namespace ecrelay
