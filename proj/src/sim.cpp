#include "ecrelay/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "ecrelay/optimizer.hpp"
#include "ecrelay/oracle.hpp"

namespace ecrelay {

namespace {

// Substream tags.
constexpr std::uint64_t kPointTag = 0x706f696e74ULL;   // per-SNR-point seed
constexpr std::uint64_t kTrialTag = 0x747269616cULL;   // per-trial stream
constexpr std::uint64_t kVerifyTag = 0x766572696679ULL;

EnergyState plus_saved(const EnergyState& harvest, const SavedEnergy& s) {
  return {harvest.E_S + s.saved_S, harvest.E_R1 + s.saved_R1,
          harvest.E_R2 + s.saved_R2};
}

// Battery leftover in outage mode: requirements are consumed exactly, the
// donor loses the raw transfer, the receiver keeps what arrived.
SavedEnergy outage_leftover(const EnergyState& e, const OutageOutcome& o,
                            const SystemParams& p) {
  return {std::max(0.0, e.E_S - o.e_s1 - o.e_s2),
          std::max(0.0, e.E_R1 + p.gamma21 * o.delta21 - o.delta12 - o.e_R1),
          std::max(0.0, e.E_R2 + p.gamma12 * o.delta12 - o.delta21 - o.e_R2)};
}

struct TrialAccum {
  double sum_c_ec = 0.0;
  double sum_c_noec = 0.0;
  double sum_r1_ec = 0.0;
  double sum_r1_noec = 0.0;
  double sum_r2_ec = 0.0;
  double sum_r2_noec = 0.0;
  std::array<std::int64_t, kNumCaseLabels> case_count{};
  std::array<std::int64_t, 2 * kNumArms> outage_count{};
  std::int64_t cycles = 0;
  std::int64_t oracle_violations = 0;
};

TrialAccum accumulate_trial(const SimConfig& cfg, int trial) {
  TrialAccum a;
  for (const CycleRecord& rec : run_trial(cfg, trial)) {
    a.sum_c_ec += rec.c_ec;
    a.sum_c_noec += rec.c_noec;
    a.sum_r1_ec += rec.r1_ec;
    a.sum_r1_noec += rec.r1_noec;
    a.sum_r2_ec += rec.r2_ec;
    a.sum_r2_noec += rec.r2_noec;
    a.case_count[static_cast<int>(rec.label)] += 1;
    for (int arm = 0; arm < kNumArms; ++arm) {
      a.outage_count[2 * arm + 0] += rec.out[arm][0] ? 1 : 0;
      a.outage_count[2 * arm + 1] += rec.out[arm][1] ? 1 : 0;
    }
    a.oracle_violations += rec.oracle_violation ? 1 : 0;
    a.cycles += 1;
  }
  return a;
}

}  // namespace

void SimConfig::validate() const {
  params.validate();
  targets.validate();
  if (trials < 1)
    throw std::invalid_argument("SimConfig: trials must be >= 1");
  if (cycles_per_trial < 1)
    throw std::invalid_argument("SimConfig: cycles_per_trial must be >= 1");
  if (snr_points_db.empty())
    throw std::invalid_argument("SimConfig: snr_points_db must be nonempty");
  for (double s : snr_points_db)
    if (!std::isfinite(s))
      throw std::invalid_argument("SimConfig: SNR points must be finite");
  if (grid_n_oracle != 0 && grid_n_oracle < 64)
    throw std::invalid_argument("SimConfig: grid_n_oracle must be 0 or >= 64");
}

double sigma_g_for_snr_db(const SystemParams& p, double snr_db) {
  const double denom = p.mu_R1 / p.sigma_wb1_sq + p.mu_R2 / p.sigma_wb2_sq;
  if (!(denom > 0.0))
    throw std::invalid_argument(
        "sigma_g_for_snr_db: relays with zero mean energy cannot realize a "
        "positive destination SNR");
  return 2.0 * std::pow(10.0, snr_db / 10.0) / denom;
}

std::pair<ChannelRealization, EnergyState> draw_cycle(RandomStream& stream,
                                                      const SystemParams& p) {
  ChannelRealization ch;
  ch.h1_sq = stream.exponential(p.sigma_h1_sq);
  ch.h2_sq = stream.exponential(p.sigma_h2_sq);
  ch.g1_sq = stream.exponential(p.sigma_g1_sq);
  ch.g2_sq = stream.exponential(p.sigma_g2_sq);
  EnergyState e;
  e.E_S = stream.normal_trunc0(p.mu_S, p.sd_S);
  e.E_R1 = stream.normal_trunc0(p.mu_R1, p.sd_R1);
  e.E_R2 = stream.normal_trunc0(p.mu_R2, p.sd_R2);
  return {ch, e};
}

std::vector<CycleRecord> run_trial(const SimConfig& cfg, int trial_index) {
  RandomStream stream(substream_seed(cfg.seed, kTrialTag,
                                     static_cast<std::uint64_t>(trial_index)));
  std::vector<CycleRecord> recs;
  recs.reserve(static_cast<std::size_t>(cfg.cycles_per_trial));
  const bool ess = cfg.params.ess_enabled;

  if (cfg.mode == SimMode::Capacity) {
    SavedEnergy carry_ec;
    SavedEnergy carry_noec;
    for (int c = 0; c < cfg.cycles_per_trial; ++c) {
      const auto [ch, harvest] = draw_cycle(stream, cfg.params);
      CycleRecord rec;
      rec.avail_ec = plus_saved(harvest, carry_ec);
      rec.avail_noec = plus_saved(harvest, carry_noec);

      const CycleSolution ec = solve_cycle(rec.avail_ec, ch, cfg.params);
      const CycleSolution ne =
          solve_cycle_no_ec(rec.avail_noec, ch, cfg.params);
      if (ess) {
        carry_ec = energy_saved(rec.avail_ec, ec);
        carry_noec = energy_saved(rec.avail_noec, ne);
      }
      if (cfg.grid_n_oracle > 0) {
        const CycleSolution ref =
            oracle_solve(rec.avail_ec, ch, cfg.params, cfg.grid_n_oracle);
        rec.oracle_violation =
            std::abs(ec.c_total - ref.c_total) > kOracleGapTol;
      }
      rec.c_ec = ec.c_total;
      rec.c_noec = ne.c_total;
      rec.r1_ec = ec.rate1;
      rec.r2_ec = ec.rate2;
      rec.r1_noec = ne.rate1;
      rec.r2_noec = ne.rate2;
      rec.label = ec.case_label;
      recs.push_back(rec);
    }
    return recs;
  }

  // Outage mode: four arms on shared draws with independent ledgers.
  SystemParams with_ec = cfg.params;
  with_ec.ec_enabled = true;
  SystemParams without_ec = cfg.params;
  without_ec.ec_enabled = false;
  std::array<SavedEnergy, kNumArms> carry{};
  for (int c = 0; c < cfg.cycles_per_trial; ++c) {
    const auto [ch, harvest] = draw_cycle(stream, cfg.params);
    const RequiredEnergies req =
        required_energies(cfg.targets, ch, cfg.params);
    CycleRecord rec;
    rec.req = req;
    for (int arm = 0; arm < kNumArms; ++arm) {
      const bool arm_ess = arm == kArmEcEss || arm == kArmNoEcEss;
      const bool arm_ec = arm == kArmEcEss || arm == kArmEcNoEss;
      const SystemParams& ap = arm_ec ? with_ec : without_ec;
      rec.avail[arm] = plus_saved(harvest, carry[arm]);
      const OutageOutcome o = classify_outage(rec.avail[arm], req, ap);
      rec.out[arm][0] = o.out_link1;
      rec.out[arm][1] = o.out_link2;
      if (arm_ess) carry[arm] = outage_leftover(rec.avail[arm], o, ap);
    }
    recs.push_back(rec);
  }
  return recs;
}

std::vector<SweepRow> run_sweep(const SimConfig& cfg, ExecPolicy policy) {
  cfg.validate();
  std::vector<SweepRow> rows;
  rows.reserve(cfg.snr_points_db.size());

  for (const double snr_db : cfg.snr_points_db) {
    SimConfig pc = cfg;
    const double sg = sigma_g_for_snr_db(cfg.params, snr_db);
    pc.params.sigma_g1_sq = sg;
    pc.params.sigma_g2_sq = sg;
    // Hash the SNR value itself so duplicate points get identical rows.
    pc.seed = substream_seed(cfg.seed, kPointTag,
                             std::bit_cast<std::uint64_t>(snr_db));

    std::vector<TrialAccum> acc(static_cast<std::size_t>(cfg.trials));
    if (policy == ExecPolicy::OpenMP) {
#pragma omp parallel for schedule(dynamic)
      for (int t = 0; t < cfg.trials; ++t) acc[t] = accumulate_trial(pc, t);
    } else {
      for (int t = 0; t < cfg.trials; ++t) acc[t] = accumulate_trial(pc, t);
    }

    // Reduce in trial order; both execution policies produce identical rows.
    TrialAccum tot;
    for (const TrialAccum& a : acc) {
      tot.sum_c_ec += a.sum_c_ec;
      tot.sum_c_noec += a.sum_c_noec;
      tot.sum_r1_ec += a.sum_r1_ec;
      tot.sum_r1_noec += a.sum_r1_noec;
      tot.sum_r2_ec += a.sum_r2_ec;
      tot.sum_r2_noec += a.sum_r2_noec;
      for (int i = 0; i < kNumCaseLabels; ++i)
        tot.case_count[i] += a.case_count[i];
      for (int i = 0; i < 2 * kNumArms; ++i)
        tot.outage_count[i] += a.outage_count[i];
      tot.cycles += a.cycles;
      tot.oracle_violations += a.oracle_violations;
    }
    if (tot.oracle_violations > 0)
      throw std::logic_error("run_sweep: oracle cross-check failed on " +
                             std::to_string(tot.oracle_violations) +
                             " cycles");

    SweepRow row;
    row.snr_db = snr_db;
    const double n = static_cast<double>(tot.cycles);
    if (cfg.mode == SimMode::Capacity) {
      row.avg_c_ec = tot.sum_c_ec / n;
      row.avg_c_noec = tot.sum_c_noec / n;
      row.gain = row.avg_c_ec - row.avg_c_noec;
      row.avg_r1_ec = tot.sum_r1_ec / n;
      row.avg_r1_noec = tot.sum_r1_noec / n;
      row.avg_r2_ec = tot.sum_r2_ec / n;
      row.avg_r2_noec = tot.sum_r2_noec / n;
      for (int i = 0; i < kNumCaseLabels; ++i)
        row.case_pct[i] = 100.0 * static_cast<double>(tot.case_count[i]) / n;
    } else {
      row.outage_d1_ec = static_cast<double>(tot.outage_count[2 * kArmEcEss]) / n;
      row.outage_d2_ec =
          static_cast<double>(tot.outage_count[2 * kArmEcEss + 1]) / n;
      row.outage_d1_noec =
          static_cast<double>(tot.outage_count[2 * kArmNoEcEss]) / n;
      row.outage_d2_noec =
          static_cast<double>(tot.outage_count[2 * kArmNoEcEss + 1]) / n;
      row.outage_d1_ec_noess =
          static_cast<double>(tot.outage_count[2 * kArmEcNoEss]) / n;
      row.outage_d2_ec_noess =
          static_cast<double>(tot.outage_count[2 * kArmEcNoEss + 1]) / n;
      row.outage_d1_noec_noess =
          static_cast<double>(tot.outage_count[2 * kArmNoEcNoEss]) / n;
      row.outage_d2_noec_noess =
          static_cast<double>(tot.outage_count[2 * kArmNoEcNoEss + 1]) / n;
    }
    rows.push_back(row);
  }
  return rows;
}

VerifyReport run_verify(const SystemParams& params, int instances, int grid_n,
                        std::uint64_t seed) {
  params.validate();
  if (instances < 1)
    throw std::invalid_argument("run_verify: instances must be >= 1");

  VerifyReport rep;
  rep.instances = instances;
  for (int i = 0; i < instances; ++i) {
    RandomStream stream(
        substream_seed(seed, kVerifyTag, static_cast<std::uint64_t>(i)));
    SystemParams p = params;
    const double snr_db = 30.0 * stream.uniform01();
    const double sg = sigma_g_for_snr_db(p, snr_db);
    p.sigma_g1_sq = sg;
    p.sigma_g2_sq = sg;
    const auto [ch, energy] = draw_cycle(stream, p);

    const CycleSolution sol = solve_cycle(energy, ch, p);
    if (!check_feasibility(energy, ch, p, sol).empty())
      rep.feasibility_violations += 1;

    const CycleSolution base = solve_cycle_no_ec(energy, ch, p);
    if (sol.c_total < base.c_total - kTol) rep.dominance_violations += 1;

    if (sol.case_label == CaseLabel::B1 || sol.case_label == CaseLabel::B3) {
      const bool from_r1 = sol.case_label == CaseLabel::B1;
      const double delta = from_r1 ? sol.delta12 : sol.delta21;
      const double donor = from_r1 ? energy.E_R1 : energy.E_R2;
      const double step = 1e-4;
      if (delta > step && delta < donor - step) {
        const auto c2sum = [&](double d) {
          const double er1 = from_r1 ? energy.E_R1 - d
                                     : energy.E_R1 + p.gamma21 * d;
          const double er2 = from_r1 ? energy.E_R2 + p.gamma12 * d
                                     : energy.E_R2 - d;
          return link_rate(ch.g1_sq, er1, p.sigma_wb1_sq) +
                 link_rate(ch.g2_sq, er2, p.sigma_wb2_sq);
        };
        const double fd =
            (c2sum(delta + step) - c2sum(delta - step)) / (2.0 * step);
        if (std::abs(fd) > 1e-4) rep.stationarity_violations += 1;
      }
    }

    if (grid_n > 0) {
      const CycleSolution ref = oracle_solve(energy, ch, p, grid_n);
      const double gap = std::abs(sol.c_total - ref.c_total);
      rep.max_oracle_gap = std::max(rep.max_oracle_gap, gap);
      if (gap > kOracleGapTol) rep.oracle_violations += 1;
    }
  }
  return rep;
}

}  // namespace ecrelay
