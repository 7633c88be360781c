#pragma once

#include <array>
#include <string>

namespace ecrelay {

/// Feasibility tolerance for all energy-budget comparisons (mJ).
inline constexpr double kTol = 1e-9;

/// A cycle whose optimal total rate falls below this is treated as rate-zero
/// and gets the all-zero allocation.
inline constexpr double kZeroRate = 1e-12;

enum class CaseLabel { A1, A2, A3, B1, B2, B3, B4, Degenerate };
inline constexpr int kNumCaseLabels = 8;

enum class Direction { R1toR2, R2toR1, None };

const char* to_string(CaseLabel c);
const char* to_string(Direction d);

/// Static system description. Energies are per-symbol quantities in mJ,
/// rates in bits/s/Hz; only ratios enter the rate formulas.
struct SystemParams {
  // First-hop (relay-side) noise variances, mJ.
  double sigma_w1_sq = 1.0;
  double sigma_w2_sq = 1.0;
  // Second-hop (destination-side) noise variances, mJ.
  double sigma_wb1_sq = 1.0;
  double sigma_wb2_sq = 1.0;
  // Energy transfer efficiencies, must lie in (0, 1].
  double gamma12 = 0.9;
  double gamma21 = 0.9;
  // Channel variances (Rayleigh fading: power gains are exponential with
  // these means).
  double sigma_h1_sq = 1.0;
  double sigma_h2_sq = 1.0;
  double sigma_g1_sq = 1.0;
  double sigma_g2_sq = 1.0;
  // Energy arrival distributions, mean / std-dev in mJ, truncated below at 0.
  double mu_S = 100.0;
  double sd_S = 50.0;
  double mu_R1 = 100.0;
  double sd_R1 = 50.0;
  double mu_R2 = 100.0;
  double sd_R2 = 50.0;
  bool ess_enabled = true;
  bool ec_enabled = true;

  /// Throws std::invalid_argument naming the first violated field.
  void validate() const;
};

/// Channel power gains |h1|^2, |h2|^2, |g1|^2, |g2|^2 for one cycle.
struct ChannelRealization {
  double h1_sq = 0.0;
  double h2_sq = 0.0;
  double g1_sq = 0.0;
  double g2_sq = 0.0;
};

/// Energy available per symbol at cycle start (fresh harvest plus carryover).
struct EnergyState {
  double E_S = 0.0;
  double E_R1 = 0.0;
  double E_R2 = 0.0;
};

/// Energy banked for the next cycle.
struct SavedEnergy {
  double saved_S = 0.0;
  double saved_R1 = 0.0;
  double saved_R2 = 0.0;
};

/// Optimal per-cycle allocation. At most one of delta12/delta21 is nonzero,
/// and c_total == rate1 + rate2.
struct CycleSolution {
  double e_s1 = 0.0;
  double e_s2 = 0.0;
  double e_R1 = 0.0;
  double e_R2 = 0.0;
  double delta12 = 0.0;
  double delta21 = 0.0;
  CaseLabel case_label = CaseLabel::Degenerate;
  double rate1 = 0.0;  // end-to-end rate of the S-R1-D1 link
  double rate2 = 0.0;  // end-to-end rate of the S-R2-D2 link
  double c_total = 0.0;
};

/// log2(1 + gain_sq * energy / noise_var). Throws on noise_var <= 0.
double link_rate(double gain_sq, double energy, double noise_var);

/// min(rate_sr1, rate_r1d1) + min(rate_sr2, rate_r2d2).
double total_rate(double rate_sr1, double rate_r1d1, double rate_sr2,
                  double rate_r2d2);

/// Average SNR at the destinations:
/// (sigma_g1^2 mu_R1 / sigma_wb1^2 + sigma_g2^2 mu_R2 / sigma_wb2^2) / 2.
double avg_dest_snr(const SystemParams& p);

}  // namespace ecrelay
