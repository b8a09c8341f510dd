#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfra/geometry.hpp"
#include "gfra/metrics.hpp"
#include "gfra/pilots.hpp"
#include "gfra/units.hpp"

namespace gfra {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_path(field) {}
    std::string field_path;
};

struct CampaignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full simulation configuration. Defaults reproduce the reference setup:
/// 1000 devices over a 500 m square, 1% activity, 1 mW uplinks at 868 MHz,
/// 40-symbol pilots, -122.88 dBm noise (125 kHz band), 64 single-antenna APs.
struct Scenario {
    std::size_t k_devices = 1000;
    DeploymentMode mode = DeploymentMode::CellFree;
    std::size_t n_aps = 64;
    std::size_t antennas_per_ap = 1;
    double area_side = 500.0;
    double epsilon_a = 0.01;
    double rho_w = 1e-3;
    double sigma2_w = dbm_to_watts(-122.88);
    std::size_t tau_p = 40;
    double carrier_hz = 868e6;  // informational
    double device_height_min = 1.0;
    double device_height_max = 4.0;
    double ap_height = 29.0;
    std::size_t n_sim = 1000;
    std::uint64_t master_seed = 1;
    double v_min = 1e-2;
    double v_max = 1e5;
    std::size_t v_points = 71;
    bool redraw_pilots_per_trial = false;

    std::size_t m_total() const { return n_aps * antennas_per_ap; }
    std::vector<double> v_grid() const { return log_grid(v_min, v_max, v_points); }

    /// Throws ConfigError naming the offending field.
    void validate() const;

    /// Rebinds the deployment: co-located keeps one AP with m antennas,
    /// cell-free uses m single-antenna APs.
    void set_mode_and_m(DeploymentMode new_mode, std::size_t m);
};

/// Scenario-level pilot book (stream "pilots"); trials reuse it unless
/// redraw_pilots_per_trial is set.
PilotBook scenario_pilots(const Scenario& scenario);

/// One fully deterministic trial: placement, shadowing, fading, activity,
/// synthesis and estimation, all on independent sub-streams derived from
/// (master_seed, stream name, trial_index). `pilot_gram_cache`, when given,
/// must equal pilot_gram(pilots); campaigns pass it to avoid recomputing the
/// scenario-level Gram per trial.
TrialOutcome run_trial(const Scenario& scenario, const PilotBook& pilots,
                       std::size_t trial_index,
                       const Eigen::MatrixXcd* pilot_gram_cache = nullptr);

struct TrialSummary {
    std::size_t trial = 0;
    bool failed = false;
    std::string error;
    std::size_t n_active = 0;
    std::size_t n_miss_at_v_opt = 0;
    std::size_t n_fa_at_v_opt = 0;
};

struct CampaignResult {
    Scenario scenario;
    RocSweep roc;
    std::vector<TrialSummary> trial_summaries;  // one per requested trial
    std::size_t n_failed = 0;
    double wall_seconds = 0.0;
    double mean_active = 0.0;
};

/// Fans trials out to `threads` workers (0 = hardware concurrency) and
/// aggregates in trial order, so results do not depend on the worker count.
/// A failed trial is recorded and excluded; an all-failed campaign throws.
CampaignResult run_campaign(const Scenario& scenario, unsigned threads = 0);

/// Order-insensitive parallel map used by run_campaign; exposed for tests.
/// Returns per-index results; `errors[i]` holds the failure message, if any.
struct ParallelRunReport {
    std::vector<std::optional<TrialOutcome>> outcomes;
    std::vector<std::string> errors;
};
ParallelRunReport run_trials_parallel(std::size_t n, unsigned threads,
                                      const std::function<TrialOutcome(std::size_t)>& fn);

/// Cartesian expansion of named sweeps over a base scenario. Known names:
/// rho_mw, area_m, epsilon_a, m_total, mode. All expansions share the base
/// master seed, so device layouts stay paired across the matrix.
using SweepList = std::vector<std::pair<std::string, std::vector<std::string>>>;
std::vector<Scenario> scenario_matrix(const Scenario& base, const SweepList& sweeps);

const char* mode_name(DeploymentMode mode);
DeploymentMode mode_from_name(const std::string& name);

}  // namespace gfra
