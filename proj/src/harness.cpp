#include "gfra/harness.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "gfra/channel.hpp"
#include "gfra/detector.hpp"
#include "gfra/signal.hpp"

namespace gfra {

void Scenario::validate() const {
    if (k_devices == 0) {
        throw ConfigError("k_devices", "must be >= 1");
    }
    if (tau_p == 0) {
        throw ConfigError("tau_p", "must be >= 1");
    }
    if (n_aps == 0) {
        throw ConfigError("n_aps", "must be >= 1");
    }
    if (antennas_per_ap == 0) {
        throw ConfigError("m_total", "must be >= n_aps");
    }
    if (mode == DeploymentMode::CoLocated && n_aps != 1) {
        throw ConfigError("n_aps", "co-located mode requires exactly one AP");
    }
    if (mode == DeploymentMode::CellFree && antennas_per_ap != 1) {
        throw ConfigError("n_aps", "cell-free APs are single-antenna: n_aps must equal m_total");
    }
    if (mode == DeploymentMode::CellFree && n_aps < 2) {
        throw ConfigError("m_total", "cell-free mode requires at least 2 APs");
    }
    if (area_side <= 0.0) {
        throw ConfigError("area_m", "must be > 0");
    }
    if (epsilon_a < 0.0 || epsilon_a > 1.0) {
        throw ConfigError("epsilon_a", "must be in [0, 1]");
    }
    if (rho_w <= 0.0) {
        throw ConfigError("rho_mw", "transmit power must be > 0");
    }
    if (sigma2_w <= 0.0) {
        throw ConfigError("sigma2_dbm", "noise power must be > 0");
    }
    if (device_height_max < device_height_min) {
        throw ConfigError("h_device_max", "must be >= h_device_min");
    }
    if (n_sim == 0) {
        throw ConfigError("n_sim", "must be >= 1");
    }
    if (v_min <= 0.0 || v_max < v_min) {
        throw ConfigError("v_min", "need 0 < v_min <= v_max");
    }
    if (v_points == 0) {
        throw ConfigError("v_points", "must be >= 1");
    }
    if (m_total() * tau_p < k_devices) {
        throw ConfigError("tau_p", "M * tau_p must be >= k_devices for full-rank detection");
    }
}

void Scenario::set_mode_and_m(DeploymentMode new_mode, std::size_t m) {
    mode = new_mode;
    if (new_mode == DeploymentMode::CoLocated) {
        n_aps = 1;
        antennas_per_ap = m;
    } else {
        n_aps = m;
        antennas_per_ap = 1;
    }
}

PilotBook scenario_pilots(const Scenario& scenario) {
    Rng rng = make_stream(scenario.master_seed, "pilots");
    return generate_pilots(scenario.k_devices, scenario.tau_p, rng);
}

TrialOutcome run_trial(const Scenario& scenario, const PilotBook& pilots,
                       std::size_t trial_index, const Eigen::MatrixXcd* pilot_gram_cache) {
    const auto trial = static_cast<std::uint64_t>(trial_index);
    Rng ap_rng = make_stream(scenario.master_seed, "aps", trial);
    Rng device_rng = make_stream(scenario.master_seed, "devices", trial);
    Rng shadow_rng = make_stream(scenario.master_seed, "shadowing", trial);
    Rng fading_rng = make_stream(scenario.master_seed, "fading", trial);
    Rng activity_rng = make_stream(scenario.master_seed, "activity", trial);
    Rng phase_rng = make_stream(scenario.master_seed, "phase", trial);
    Rng noise_rng = make_stream(scenario.master_seed, "noise", trial);

    const Deployment deployment = make_deployment(
        scenario.mode, scenario.n_aps, scenario.k_devices, scenario.area_side, scenario.ap_height,
        {scenario.device_height_min, scenario.device_height_max}, ap_rng, device_rng);
    const LargeScale large_scale = large_scale_for(deployment, shadow_rng);
    const ChannelState channel =
        assemble_channel(deployment, scenario.antennas_per_ap, large_scale, fading_rng);

    PilotBook trial_pilots;
    const PilotBook* book = &pilots;
    if (scenario.redraw_pilots_per_trial) {
        Rng pilot_rng = make_stream(scenario.master_seed, "pilots-trial", trial);
        trial_pilots = generate_pilots(scenario.k_devices, scenario.tau_p, pilot_rng);
        book = &trial_pilots;
        pilot_gram_cache = nullptr;
    }

    const ActivityRealization activity =
        draw_activity(scenario.k_devices, scenario.epsilon_a, scenario.rho_w, activity_rng,
                      phase_rng);
    const StackedSignal y = synthesize(channel, *book, activity, scenario.sigma2_w, noise_rng);

    const DetectorWorkspace ws = DetectorWorkspace::build(channel, *book, pilot_gram_cache);
    const Eigen::VectorXcd gamma_hat = estimate_gamma(ws, channel, *book, y);

    TrialOutcome out;
    out.active = activity.active;
    out.gamma_hat = gamma_hat;
    out.snr.resize(static_cast<Eigen::Index>(scenario.k_devices));
    out.margin.resize(static_cast<Eigen::Index>(scenario.k_devices));
    for (Eigen::Index i = 0; i < out.snr.size(); ++i) {
        // Thresholding SNR uses the nominal configured power and the known
        // prior CSI and pilot norms.
        out.snr(i) = snr_of_device(channel.g.col(i), book->s.row(i).transpose(), scenario.rho_w,
                                   scenario.sigma2_w);
        out.margin(i) = std::abs(gamma_hat(i)) * std::sqrt(out.snr(i));
    }
    return out;
}

ParallelRunReport run_trials_parallel(std::size_t n, unsigned threads,
                                      const std::function<TrialOutcome(std::size_t)>& fn) {
    ParallelRunReport report;
    report.outcomes.resize(n);
    report.errors.resize(n);

    unsigned workers = threads == 0 ? std::thread::hardware_concurrency() : threads;
    if (workers == 0) {
        workers = 1;
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                report.outcomes[i] = fn(i);
            } catch (const std::exception& e) {
                report.errors[i] = e.what();
            } catch (...) {
                report.errors[i] = "unknown error";
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    return report;
}

CampaignResult run_campaign(const Scenario& scenario, unsigned threads) {
    scenario.validate();
    const auto t0 = std::chrono::steady_clock::now();

    const PilotBook pilots = scenario_pilots(scenario);
    const Eigen::MatrixXcd shared_pilot_gram =
        scenario.redraw_pilots_per_trial ? Eigen::MatrixXcd() : pilot_gram(pilots);
    const Eigen::MatrixXcd* gram_cache =
        scenario.redraw_pilots_per_trial ? nullptr : &shared_pilot_gram;
    ParallelRunReport report = run_trials_parallel(
        scenario.n_sim, threads,
        [&](std::size_t i) { return run_trial(scenario, pilots, i, gram_cache); });

    CampaignResult result;
    result.scenario = scenario;
    result.trial_summaries.resize(scenario.n_sim);

    std::vector<TrialOutcome> completed;
    completed.reserve(scenario.n_sim);
    for (std::size_t i = 0; i < scenario.n_sim; ++i) {
        auto& summary = result.trial_summaries[i];
        summary.trial = i;
        if (!report.outcomes[i].has_value()) {
            summary.failed = true;
            summary.error = report.errors[i];
            ++result.n_failed;
            std::fprintf(stderr, "gfra: trial %zu failed and was excluded: %s\n", i,
                         report.errors[i].c_str());
            continue;
        }
        completed.push_back(std::move(*report.outcomes[i]));
    }
    if (completed.empty()) {
        throw CampaignError("run_campaign: all trials failed");
    }

    result.roc = sweep_roc(completed, scenario.v_grid());

    const double v_opt = result.roc.at_v_opt().v;
    std::size_t ci = 0;
    double active_sum = 0.0;
    for (std::size_t i = 0; i < scenario.n_sim; ++i) {
        auto& summary = result.trial_summaries[i];
        if (summary.failed) {
            continue;
        }
        const TrialOutcome& t = completed[ci++];
        summary.n_active = t.n_active();
        summary.n_miss_at_v_opt = t.misses_at(v_opt);
        summary.n_fa_at_v_opt = t.false_alarms_at(v_opt);
        active_sum += static_cast<double>(summary.n_active);
    }
    result.mean_active = active_sum / static_cast<double>(completed.size());
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

const char* mode_name(DeploymentMode mode) {
    return mode == DeploymentMode::CoLocated ? "co-located" : "cell-free";
}

DeploymentMode mode_from_name(const std::string& name) {
    if (name == "co-located") {
        return DeploymentMode::CoLocated;
    }
    if (name == "cell-free") {
        return DeploymentMode::CellFree;
    }
    throw ConfigError("mode", "unknown mode '" + name + "' (use co-located or cell-free)");
}

namespace {

double parse_double_or(const std::string& field, const std::string& text) {
    try {
        std::size_t pos = 0;
        const double val = std::stod(text, &pos);
        if (pos != text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return val;
    } catch (const std::exception&) {
        throw ConfigError(field, "expected a number, got '" + text + "'");
    }
}

}  // namespace

std::vector<Scenario> scenario_matrix(const Scenario& base, const SweepList& sweeps) {
    std::vector<Scenario> scenarios{base};
    for (const auto& [name, values] : sweeps) {
        if (values.empty()) {
            throw ConfigError(name, "sweep list is empty");
        }
        std::vector<Scenario> expanded;
        expanded.reserve(scenarios.size() * values.size());
        for (const auto& s : scenarios) {
            for (const auto& value : values) {
                Scenario next = s;
                if (name == "rho_mw") {
                    next.rho_w = milliwatts_to_watts(parse_double_or(name, value));
                } else if (name == "area_m") {
                    next.area_side = parse_double_or(name, value);
                } else if (name == "epsilon_a") {
                    next.epsilon_a = parse_double_or(name, value);
                } else if (name == "m_total") {
                    const double m = parse_double_or(name, value);
                    if (m < 1.0 || m != std::floor(m)) {
                        throw ConfigError(name, "expected a positive integer, got '" + value + "'");
                    }
                    next.set_mode_and_m(next.mode, static_cast<std::size_t>(m));
                } else if (name == "mode") {
                    next.set_mode_and_m(mode_from_name(value), next.m_total());
                } else {
                    throw ConfigError(name, "unknown sweep name");
                }
                expanded.push_back(next);
            }
        }
        scenarios = std::move(expanded);
    }
    return scenarios;
}

}  // namespace gfra
