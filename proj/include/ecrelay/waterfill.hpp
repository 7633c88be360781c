#pragma once

namespace ecrelay {

/// log2(1 + e/N) where N is a noise floor in mJ; 0 for a dead channel
/// (N = +inf). The solver and the water-filler share this so that matched
/// rates agree bit for bit.
double rate_from_floor(double e, double N);

/// Allocation over two parallel Gaussian channels with noise floors
/// N_i = noise_var_i / gain_i^2 (mJ). A dead channel is passed as
/// N_i = +infinity and receives nothing.
struct WaterfillResult {
  double e1 = 0.0;
  double e2 = 0.0;
  double water_level = 0.0;  // nu; every active channel sits at nu - N_i
  double sum_rate = 0.0;
};

/// Splits `budget` so that log2(1+e1/N1) + log2(1+e2/N2) is maximal.
/// The water level is solved in closed form (two channels admit an exact
/// case analysis). Spends the whole budget across live channels; if both
/// channels are dead nothing can be spent.
WaterfillResult waterfill_two(double N1, double N2, double budget);

struct CappedAllocation {
  double e1 = 0.0;
  double e2 = 0.0;
  double rate1 = 0.0;
  double rate2 = 0.0;
  double sum_rate = 0.0;
};

/// Maximizes min(log2(1+e1/N1), cap1) + min(log2(1+e2/N2), cap2) subject to
/// e1 + e2 <= budget, returning the minimal-energy maximizer: no energy is
/// spent past the point where a link reaches its cap. Water-fill, clip any
/// link exceeding its cap to the cap's exact energy (2^cap - 1) * N_i, then
/// re-fill the residual on the other link; two passes are exact for two
/// channels.
CappedAllocation capped_waterfill_two(double N1, double N2, double budget,
                                      double cap1, double cap2);

}  // namespace ecrelay
