#include "ecrelay/model.hpp"

#include <cmath>
#include <stdexcept>

namespace ecrelay {

const char* to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::A1: return "A1";
    case CaseLabel::A2: return "A2";
    case CaseLabel::A3: return "A3";
    case CaseLabel::B1: return "B1";
    case CaseLabel::B2: return "B2";
    case CaseLabel::B3: return "B3";
    case CaseLabel::B4: return "B4";
    case CaseLabel::Degenerate: return "DEG";
  }
  return "?";
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::R1toR2: return "R1toR2";
    case Direction::R2toR1: return "R2toR1";
    case Direction::None: return "None";
  }
  return "?";
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("SystemParams: ") + what);
}

bool nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

void SystemParams::validate() const {
  require(std::isfinite(sigma_w1_sq) && sigma_w1_sq > 0.0, "sigma_w1_sq must be > 0");
  require(std::isfinite(sigma_w2_sq) && sigma_w2_sq > 0.0, "sigma_w2_sq must be > 0");
  require(std::isfinite(sigma_wb1_sq) && sigma_wb1_sq > 0.0, "sigma_wb1_sq must be > 0");
  require(std::isfinite(sigma_wb2_sq) && sigma_wb2_sq > 0.0, "sigma_wb2_sq must be > 0");
  // gamma = 0 would make the transfer equations singular; EC-off is expressed
  // via ec_enabled, never via a zero efficiency.
  require(gamma12 > 0.0 && gamma12 <= 1.0, "gamma12 must be in (0, 1]");
  require(gamma21 > 0.0 && gamma21 <= 1.0, "gamma21 must be in (0, 1]");
  require(nonneg(sigma_h1_sq), "sigma_h1_sq must be >= 0");
  require(nonneg(sigma_h2_sq), "sigma_h2_sq must be >= 0");
  require(nonneg(sigma_g1_sq), "sigma_g1_sq must be >= 0");
  require(nonneg(sigma_g2_sq), "sigma_g2_sq must be >= 0");
  require(nonneg(mu_S), "mu_S must be >= 0");
  require(nonneg(mu_R1), "mu_R1 must be >= 0");
  require(nonneg(mu_R2), "mu_R2 must be >= 0");
  require(nonneg(sd_S), "sd_S must be >= 0");
  require(nonneg(sd_R1), "sd_R1 must be >= 0");
  require(nonneg(sd_R2), "sd_R2 must be >= 0");
}

double link_rate(double gain_sq, double energy, double noise_var) {
  if (!(noise_var > 0.0))
    throw std::invalid_argument("link_rate: noise_var must be > 0");
  return std::log2(1.0 + gain_sq * energy / noise_var);
}

double total_rate(double rate_sr1, double rate_r1d1, double rate_sr2,
                  double rate_r2d2) {
  return std::min(rate_sr1, rate_r1d1) + std::min(rate_sr2, rate_r2d2);
}

double avg_dest_snr(const SystemParams& p) {
  if (!(p.sigma_wb1_sq > 0.0) || !(p.sigma_wb2_sq > 0.0))
    throw std::invalid_argument("avg_dest_snr: noise variances must be > 0");
  return 0.5 * (p.sigma_g1_sq * p.mu_R1 / p.sigma_wb1_sq +
                p.sigma_g2_sq * p.mu_R2 / p.sigma_wb2_sq);
}

}  // namespace ecrelay
