#pragma once

#include <filesystem>
#include <iosfwd>
#include <json.hpp>

#include "gfra/harness.hpp"

namespace gfra {

/// roc.csv: one '#' preamble line echoing the scenario and seed, the fixed
/// header `v,p_fa,p_md,n_fa,n_miss,n_active_total,n_inactive_total,floor_fa,
/// floor_md`, then one full-precision row per grid point.
void write_roc_csv(std::ostream& out, const Scenario& scenario, const RocSweep& sweep);

/// trials.csv: per-trial activity and error counts at v_opt.
void write_trials_csv(std::ostream& out, const CampaignResult& result);

/// Scenario echo as embedded in summary.json; scenario_from summary round-trips
/// through load_scenario.
nlohmann::json scenario_json(const Scenario& scenario);
nlohmann::json summary_json(const CampaignResult& result);

/// Writes roc.csv, summary.json and trials.csv into dir (created if needed).
void write_campaign_outputs(const CampaignResult& result, const std::filesystem::path& dir);

}  // namespace gfra
