#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace gfra {

/// Result of one Monte-Carlo trial: true activity plus the cached per-device
/// detection margin |gamma_hat_k| * sqrt(SNR_k). A device is declared active
/// at threshold scale v exactly when its margin exceeds v, so the whole
/// v-sweep re-thresholds without re-solving.
struct TrialOutcome {
    std::vector<std::uint8_t> active;  // truth
    Eigen::VectorXd margin;            // empty for activity-only records
    Eigen::VectorXcd gamma_hat;        // optional diagnostics
    Eigen::VectorXd snr;               // optional diagnostics

    std::size_t k_total() const { return active.size(); }
    std::size_t n_active() const;
    std::size_t n_inactive() const { return k_total() - n_active(); }

    std::size_t misses_at(double v) const;
    std::size_t false_alarms_at(double v) const;
};

TrialOutcome make_activity_only_outcome(std::vector<std::uint8_t> active);

/// P_md: mean over trials with at least one active device of
/// 1 - |K_a intersect K_hat| / |K_a|. NaN when no trial qualifies.
double p_md(const std::vector<TrialOutcome>& trials, double v);

/// P_fa: mean over trials with at least one inactive device of
/// |K_hat \ K_a| / (K - |K_a|). NaN when no trial qualifies.
double p_fa(const std::vector<TrialOutcome>& trials, double v);

/// Pooled-count variants (total errors over total opportunities); diagnostics
/// only, not used for ROC emission.
double p_md_pooled(const std::vector<TrialOutcome>& trials, double v);
double p_fa_pooled(const std::vector<TrialOutcome>& trials, double v);

/// Lowest non-zero probabilities measurable from the realized counts:
/// floor_md = 1 / sum_i |K_{a,i}|, floor_fa = 1 / (K N_sim - sum_i |K_{a,i}|).
/// A zero denominator reports a floor of 1.
struct ProbabilityFloors {
    double floor_fa = 1.0;
    double floor_md = 1.0;
};
ProbabilityFloors probability_floors(const std::vector<TrialOutcome>& trials);

struct RocPoint {
    double v = 0.0;
    double p_fa = 0.0;
    double p_md = 0.0;
    std::uint64_t n_fa = 0;
    std::uint64_t n_miss = 0;
    std::uint64_t n_active_total = 0;
    std::uint64_t n_inactive_total = 0;
    double floor_fa = 1.0;
    double floor_md = 1.0;
};

struct RocSweep {
    std::vector<RocPoint> points;  // sorted by ascending v
    std::size_t v_opt_index = 0;

    const RocPoint& at_v_opt() const { return points.at(v_opt_index); }
};

/// Re-thresholds the cached margins over the grid and aggregates. v_opt is
/// the grid point minimizing max(p_fa / floor_fa, p_md / floor_md), ties
/// broken toward smaller p_md, then toward smaller v.
RocSweep sweep_roc(const std::vector<TrialOutcome>& trials, const std::vector<double>& v_grid);

/// Log-spaced grid of `points` values over [v_min, v_max].
std::vector<double> log_grid(double v_min, double v_max, std::size_t points);

}  // namespace gfra
