#include "gfra/results_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace gfra {

namespace {

std::string full_precision(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string scenario_echo_line(const Scenario& s) {
    std::string line = "# seed=" + std::to_string(s.master_seed);
    line += " k_devices=" + std::to_string(s.k_devices);
    line += std::string(" mode=") + mode_name(s.mode);
    line += " m_total=" + std::to_string(s.m_total());
    line += " n_aps=" + std::to_string(s.n_aps);
    line += " area_m=" + full_precision(s.area_side);
    line += " epsilon_a=" + full_precision(s.epsilon_a);
    line += " rho_w=" + full_precision(s.rho_w);
    line += " sigma2_w=" + full_precision(s.sigma2_w);
    line += " tau_p=" + std::to_string(s.tau_p);
    line += " n_sim=" + std::to_string(s.n_sim);
    line += " v_min=" + full_precision(s.v_min);
    line += " v_max=" + full_precision(s.v_max);
    line += " v_points=" + std::to_string(s.v_points);
    return line;
}

}  // namespace

void write_roc_csv(std::ostream& out, const Scenario& scenario, const RocSweep& sweep) {
    out << scenario_echo_line(scenario) << '\n';
    out << "v,p_fa,p_md,n_fa,n_miss,n_active_total,n_inactive_total,floor_fa,floor_md\n";
    for (const auto& p : sweep.points) {
        out << full_precision(p.v) << ',' << full_precision(p.p_fa) << ','
            << full_precision(p.p_md) << ',' << p.n_fa << ',' << p.n_miss << ','
            << p.n_active_total << ',' << p.n_inactive_total << ',' << full_precision(p.floor_fa)
            << ',' << full_precision(p.floor_md) << '\n';
    }
}

void write_trials_csv(std::ostream& out, const CampaignResult& result) {
    out << scenario_echo_line(result.scenario) << '\n';
    out << "trial,status,n_active,n_miss_at_v_opt,n_fa_at_v_opt\n";
    for (const auto& t : result.trial_summaries) {
        out << t.trial << ',' << (t.failed ? "failed" : "ok") << ',';
        if (t.failed) {
            out << ",,\n";
        } else {
            out << t.n_active << ',' << t.n_miss_at_v_opt << ',' << t.n_fa_at_v_opt << '\n';
        }
    }
}

nlohmann::json scenario_json(const Scenario& s) {
    return nlohmann::json{{"k_devices", s.k_devices},
                          {"mode", mode_name(s.mode)},
                          {"m_total", s.m_total()},
                          {"n_aps", s.n_aps},
                          {"area_m", s.area_side},
                          {"epsilon_a", s.epsilon_a},
                          {"rho_w", s.rho_w},
                          {"sigma2_w", s.sigma2_w},
                          {"tau_p", s.tau_p},
                          {"carrier_hz", s.carrier_hz},
                          {"h_device_min", s.device_height_min},
                          {"h_device_max", s.device_height_max},
                          {"h_ap", s.ap_height},
                          {"n_sim", s.n_sim},
                          {"seed", s.master_seed},
                          {"v_min", s.v_min},
                          {"v_max", s.v_max},
                          {"v_points", s.v_points},
                          {"pilot_redraw", s.redraw_pilots_per_trial}};
}

nlohmann::json summary_json(const CampaignResult& result) {
    const RocPoint& opt = result.roc.at_v_opt();
    nlohmann::json j;
    j["schema_version"] = 1;
    j["scenario"] = scenario_json(result.scenario);
    j["results"] = {{"v_opt", opt.v},
                    {"v_opt_index", result.roc.v_opt_index},
                    {"p_fa_at_v_opt", opt.p_fa},
                    {"p_md_at_v_opt", opt.p_md},
                    {"n_fa_at_v_opt", opt.n_fa},
                    {"n_miss_at_v_opt", opt.n_miss},
                    {"floor_fa", opt.floor_fa},
                    {"floor_md", opt.floor_md},
                    {"mean_active", result.mean_active},
                    {"n_trials_failed", result.n_failed},
                    {"wall_seconds", result.wall_seconds}};
    return j;
}

void write_campaign_outputs(const CampaignResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    std::ofstream roc(dir / "roc.csv", std::ios::binary);
    if (!roc) {
        throw std::runtime_error("cannot write " + (dir / "roc.csv").string());
    }
    write_roc_csv(roc, result.scenario, result.roc);

    std::ofstream trials(dir / "trials.csv", std::ios::binary);
    if (!trials) {
        throw std::runtime_error("cannot write " + (dir / "trials.csv").string());
    }
    write_trials_csv(trials, result);

    std::ofstream summary(dir / "summary.json", std::ios::binary);
    if (!summary) {
        throw std::runtime_error("cannot write " + (dir / "summary.json").string());
    }
    summary << summary_json(result).dump(2) << '\n';
}

}  // namespace gfra
