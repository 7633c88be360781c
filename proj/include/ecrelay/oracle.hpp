#pragma once

#include "ecrelay/model.hpp"

namespace ecrelay {

/// Brute-force reference maximizer: for each transfer direction, scans a
/// uniform grid of grid_n intervals over [0, E_donor] (endpoints included)
/// and evaluates the exact two-link capped water-filling at each transfer
/// amount. The only discretization is over the transfer, so doubling grid_n
/// never loses rate. Intended for validation, not speed.
///
/// The returned case_label records only the transfer structure of the best
/// grid point (A1 for no transfer, B2/B4 by direction, Degenerate for zero
/// rate); it does not reproduce the solver's taxonomy.
CycleSolution oracle_solve(const EnergyState& energy,
                           const ChannelRealization& ch,
                           const SystemParams& params, int grid_n);

}  // namespace ecrelay
