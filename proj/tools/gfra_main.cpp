// Command-line front end: scenario simulation campaigns, CSI recurrence
// analysis, and the structured-vs-dense solver check.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "gfra/config.hpp"
#include "gfra/csi.hpp"
#include "gfra/harness.hpp"
#include "gfra/oracle.hpp"
#include "gfra/results_io.hpp"

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SimulateOptions {
    std::string config_path;
    std::string out_dir = "out";
    unsigned threads = 0;
    std::vector<std::pair<std::string, std::string>> overrides;
    gfra::SweepList sweeps;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::string scenario_dir_name(std::size_t index, const gfra::Scenario& s) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "scenario_%03zu_%s_m%zu_rho%gmw_area%gm_eps%g", index,
                  gfra::mode_name(s.mode), s.m_total(), s.rho_w * 1e3, s.area_side, s.epsilon_a);
    return buf;
}

int run_simulate(const SimulateOptions& opt) {
    gfra::Scenario scenario;
    if (!opt.config_path.empty()) {
        scenario = gfra::load_scenario_file(opt.config_path);
    }
    for (const auto& [key, value] : opt.overrides) {
        gfra::apply_override(scenario, key, value);
    }

    const std::vector<gfra::Scenario> scenarios = gfra::scenario_matrix(scenario, opt.sweeps);
    for (const auto& s : scenarios) {
        s.validate();
    }

    const bool matrix = scenarios.size() > 1;
    nlohmann::json index = nlohmann::json::array();
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const auto& s = scenarios[i];
        const fs::path dir =
            matrix ? fs::path(opt.out_dir) / scenario_dir_name(i, s) : fs::path(opt.out_dir);
        std::fprintf(stderr, "gfra: running %s (M=%zu, rho=%g mW, n_sim=%zu) -> %s\n",
                     gfra::mode_name(s.mode), s.m_total(), s.rho_w * 1e3, s.n_sim,
                     dir.string().c_str());
        const gfra::CampaignResult result = gfra::run_campaign(s, opt.threads);
        gfra::write_campaign_outputs(result, dir);
        const auto& opt_point = result.roc.at_v_opt();
        std::printf("%s: v_opt=%g p_fa=%g p_md=%g (floors %g / %g), %zu/%zu trials, %.1f s\n",
                    dir.string().c_str(), opt_point.v, opt_point.p_fa, opt_point.p_md,
                    opt_point.floor_fa, opt_point.floor_md, s.n_sim - result.n_failed, s.n_sim,
                    result.wall_seconds);
        if (matrix) {
            index.push_back({{"dir", dir.filename().string()},
                             {"mode", gfra::mode_name(s.mode)},
                             {"m_total", s.m_total()},
                             {"rho_w", s.rho_w},
                             {"area_m", s.area_side},
                             {"epsilon_a", s.epsilon_a}});
        }
    }
    if (matrix) {
        std::ofstream out(fs::path(opt.out_dir) / "matrix.json", std::ios::binary);
        out << index.dump(2) << '\n';
    }
    return 0;
}

int run_correlate(const std::string& input, double threshold, const std::string& out_dir) {
    gfra::csi::SnapshotSeries series;
    try {
        series = gfra::csi::load_snapshot_csv_file(input);
    } catch (const std::runtime_error& e) {
        throw UsageError(std::string(input) + ": " + e.what());
    }
    const std::vector<double> deltas = gfra::csi::recurrence_series(series);
    const auto steps = gfra::csi::ecdf(deltas);

    fs::create_directories(out_dir);
    {
        std::ofstream out(fs::path(out_dir) / "series.csv", std::ios::binary);
        out << "index,timestamp,delta\n";
        char buf[64];
        for (std::size_t j = 0; j < deltas.size(); ++j) {
            const double ts = series.has_timestamps() ? series.timestamps[j]
                                                      : static_cast<double>(j);
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g", j, ts, deltas[j]);
            out << buf << '\n';
        }
    }
    {
        std::ofstream out(fs::path(out_dir) / "ecdf.csv", std::ios::binary);
        out << "value,cumulative_fraction\n";
        char buf[64];
        for (const auto& p : steps) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g", p.value, p.fraction);
            out << buf << '\n';
        }
    }
    const double frac = gfra::csi::fraction_above(deltas, threshold);
    std::printf("snapshots: %zu\n", deltas.size());
    std::printf("fraction above %g: %g\n", threshold, frac);
    return 0;
}

int run_oracle_check(std::size_t m, std::size_t k, std::size_t tau_p, int instances,
                     std::uint64_t seed) {
    constexpr std::size_t kMaxM = 8;
    constexpr std::size_t kMaxK = 12;
    constexpr std::size_t kMaxTau = 8;
    if (m > kMaxM || k > kMaxK || tau_p > kMaxTau) {
        throw UsageError("oracle-check sizes capped at M <= 8, K <= 12, tau_p <= 8");
    }
    if (m == 0 || k == 0 || tau_p == 0 || instances <= 0) {
        throw UsageError("oracle-check sizes must be >= 1");
    }
    constexpr double kTol = 1e-10;
    const auto report = gfra::oracle::equivalence_suite(m, k, tau_p, instances, seed, kTol);
    std::printf("oracle-check: %d instances, worst relative error %.3g (instance %d), tol %g\n",
                report.instances, report.worst_rel_err, report.worst_seed, kTol);
    if (!report.pass) {
        std::fprintf(stderr, "oracle-check FAILED\n");
        return 1;
    }
    std::printf("oracle-check passed\n");
    return 0;
}

int run_synth_csi(const std::string& out_path, std::size_t antennas, std::size_t snapshots,
                  double noise, double blockage, std::uint64_t seed) {
    gfra::Rng rng = gfra::make_stream(seed, "synthetic-csi");
    const auto series = gfra::csi::synthetic_series(antennas, snapshots, noise, blockage, rng);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + out_path);
    }
    gfra::csi::write_snapshot_csv(out, series);
    std::printf("wrote %zu synthetic snapshots (%zu antennas) to %s\n", snapshots, antennas,
                out_path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grant-free device activity detection simulator"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Run a Monte-Carlo detection campaign");
    simulate->add_option("--config", sim.config_path, "Scenario config file (flat key=value or a summary.json)");
    simulate->add_option("--out", sim.out_dir, "Output directory");
    simulate->add_option("--threads", sim.threads, "Worker cap (0 = hardware concurrency)");
    const std::vector<std::pair<std::string, std::string>> flag_keys = {
        {"--k", "k_devices"},       {"--tau-p", "tau_p"},
        {"--rho-mw", "rho_mw"},     {"--rho-dbm", "rho_dbm"},
        {"--sigma2-dbm", "sigma2_dbm"}, {"--epsilon-a", "epsilon_a"},
        {"--area-m", "area_m"},     {"--mode", "mode"},
        {"--m", "m_total"},         {"--n-sim", "n_sim"},
        {"--seed", "seed"},         {"--v-min", "v_min"},
        {"--v-max", "v_max"},       {"--v-points", "v_points"},
        {"--pilot-redraw", "pilot_redraw"}};
    for (const auto& [flag, key] : flag_keys) {
        const std::string key_name = key;
        simulate
            ->add_option_function<std::string>(
                flag,
                [&sim, key_name](const std::string& v) { sim.overrides.emplace_back(key_name, v); },
                "Override config key " + key_name)
            ->type_name("VALUE");
    }
    simulate->add_option_function<std::vector<std::string>>(
        "--sweep",
        [&sim](const std::vector<std::string>& entries) {
            for (const auto& e : entries) {
                const auto eq = e.find('=');
                if (eq == std::string::npos) {
                    throw CLI::ValidationError("--sweep expects name=v1,v2,...");
                }
                sim.sweeps.emplace_back(e.substr(0, eq), split_list(e.substr(eq + 1)));
            }
        },
        "Cartesian sweep, e.g. --sweep rho_mw=1,10,25 --sweep mode=co-located,cell-free");

    std::string corr_input;
    std::string corr_out = "csi_out";
    double corr_threshold = 0.9;
    auto* correlate = app.add_subcommand("correlate", "Channel recurrence analysis of a snapshot CSV");
    correlate->add_option("input", corr_input, "Snapshot CSV file")->required();
    correlate->add_option("--threshold", corr_threshold, "Correlation threshold to report");
    correlate->add_option("--out", corr_out, "Output directory");

    std::size_t om = 3;
    std::size_t ok = 4;
    std::size_t otau = 2;
    int oinstances = 100;
    std::uint64_t oseed = 2024;
    auto* oracle_check =
        app.add_subcommand("oracle-check", "Structured solver vs dense pseudo-inverse equivalence");
    oracle_check->add_option("--m", om, "Max antenna count (<= 8)");
    oracle_check->add_option("--k", ok, "Max device count (<= 12)");
    oracle_check->add_option("--tau-p", otau, "Max pilot length (<= 8)");
    oracle_check->add_option("--instances", oinstances, "Number of random instances");
    oracle_check->add_option("--seed", oseed, "Suite seed");

    std::string synth_out = "snapshots.csv";
    std::size_t synth_antennas = 64;
    std::size_t synth_snapshots = 10000;
    double synth_noise = 0.1;
    double synth_blockage = 0.09;
    std::uint64_t synth_seed = 7;
    auto* synth = app.add_subcommand("synth-csi", "Generate a synthetic snapshot series CSV");
    synth->add_option("--out", synth_out, "Output CSV path");
    synth->add_option("--antennas", synth_antennas, "Antennas per snapshot");
    synth->add_option("--snapshots", synth_snapshots, "Number of snapshots");
    synth->add_option("--noise", synth_noise, "Noise scale on unblocked snapshots");
    synth->add_option("--blockage", synth_blockage, "Fraction of blocked snapshots");
    synth->add_option("--seed", synth_seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) {
            return run_simulate(sim);
        }
        if (correlate->parsed()) {
            return run_correlate(corr_input, corr_threshold, corr_out);
        }
        if (oracle_check->parsed()) {
            return run_oracle_check(om, ok, otau, oinstances, oseed);
        }
        if (synth->parsed()) {
            return run_synth_csi(synth_out, synth_antennas, synth_snapshots, synth_noise,
                                 synth_blockage, synth_seed);
        }
    } catch (const gfra::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
