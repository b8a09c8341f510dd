#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gfra/config.hpp"
#include "gfra/results_io.hpp"
#include "gfra/units.hpp"

using namespace gfra;

TEST_CASE("empty config reproduces the reference defaults") {
    std::stringstream in("");
    const Scenario s = load_scenario(in, "empty");
    CHECK(s.k_devices == 1000);
    CHECK(s.mode == DeploymentMode::CellFree);
    CHECK(s.m_total() == 64);
    CHECK(s.n_aps == 64);
    CHECK(s.antennas_per_ap == 1);
    CHECK(s.area_side == 500.0);
    CHECK(s.epsilon_a == 0.01);
    CHECK(s.rho_w == doctest::Approx(1e-3));
    CHECK(s.sigma2_w == doctest::Approx(dbm_to_watts(-122.88)));
    CHECK(s.tau_p == 40);
    CHECK(s.carrier_hz == doctest::Approx(868e6));
    CHECK(s.device_height_min == 1.0);
    CHECK(s.device_height_max == 4.0);
    CHECK(s.ap_height == 29.0);
    CHECK(s.n_sim == 1000);
    CHECK(s.v_min == doctest::Approx(1e-2));
    CHECK(s.v_max == doctest::Approx(1e5));
    CHECK(s.v_points == 71);
    CHECK_FALSE(s.redraw_pilots_per_trial);
    s.validate();
}

TEST_CASE("key-value parsing with comments and both separators") {
    std::stringstream in(
        "# reference power study\n"
        "mode = co-located\n"
        "m_total = 32\n"
        "rho_mw = 10\n"
        "n_sim 50\n"
        "seed = 9001  # trailing comment\n");
    const Scenario s = load_scenario(in, "test");
    CHECK(s.mode == DeploymentMode::CoLocated);
    CHECK(s.n_aps == 1);
    CHECK(s.antennas_per_ap == 32);
    CHECK(s.rho_w == doctest::Approx(1e-2));
    CHECK(s.n_sim == 50);
    CHECK(s.master_seed == 9001);
}

TEST_CASE("powers accepted in dBm") {
    std::stringstream in("rho_dbm = 0\nsigma2_dbm = -120\n");
    const Scenario s = load_scenario(in, "test");
    CHECK(s.rho_w == doctest::Approx(1e-3));
    CHECK(s.sigma2_w == doctest::Approx(1e-15));
}

TEST_CASE("unknown keys and bad values name the field") {
    {
        std::stringstream in("k_devices = 10\nbogus_key = 3\n");
        try {
            load_scenario(in, "test");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.field_path == "bogus_key");
        }
    }
    {
        std::stringstream in("epsilon_a = lots\n");
        CHECK_THROWS_WITH_AS(load_scenario(in, "test"), doctest::Contains("epsilon_a"),
                             ConfigError);
    }
    {
        std::stringstream in("mode = centralized\n");
        CHECK_THROWS_AS(load_scenario(in, "test"), ConfigError);
    }
    {
        std::stringstream in("this line has no separator-\n");
        CHECK_THROWS_AS(load_scenario(in, "test"), ConfigError);
    }
}

TEST_CASE("deployment key consistency is enforced") {
    {
        std::stringstream in("mode = co-located\nm_total = 32\nn_aps = 4\n");
        CHECK_THROWS_WITH_AS(load_scenario(in, "test"), doctest::Contains("n_aps"), ConfigError);
    }
    {
        std::stringstream in("mode = cell-free\nm_total = 32\nn_aps = 8\n");
        CHECK_THROWS_AS(load_scenario(in, "test"), ConfigError);
    }
    {
        // Consistent spellings pass.
        std::stringstream in("mode = cell-free\nm_total = 32\nn_aps = 32\n");
        const Scenario s = load_scenario(in, "test");
        CHECK(s.n_aps == 32);
    }
}

TEST_CASE("missing config file names the path") {
    try {
        load_scenario_file("/nonexistent/path/sim.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/path/sim.cfg") != std::string::npos);
    }
}

TEST_CASE("overrides use the config key names") {
    Scenario s;
    apply_override(s, "mode", "cell-free");
    apply_override(s, "m_total", "64");
    apply_override(s, "rho_mw", "1");
    apply_override(s, "n_sim", "10");
    CHECK(s.mode == DeploymentMode::CellFree);
    CHECK(s.m_total() == 64);
    CHECK(s.n_aps == 64);
    CHECK(s.rho_w == doctest::Approx(1e-3));
    CHECK(s.n_sim == 10);
    CHECK_THROWS_AS(apply_override(s, "nonsense", "1"), ConfigError);
}

TEST_CASE("config text round trip preserves the scenario") {
    Scenario s;
    s.k_devices = 123;
    s.set_mode_and_m(DeploymentMode::CoLocated, 48);
    s.rho_w = 2.5e-2;
    s.epsilon_a = 0.2;
    s.n_sim = 17;
    s.master_seed = 424242;
    s.redraw_pilots_per_trial = true;

    std::stringstream buf(scenario_to_config_text(s));
    const Scenario back = load_scenario(buf, "roundtrip");
    CHECK(back.k_devices == s.k_devices);
    CHECK(back.mode == s.mode);
    CHECK(back.m_total() == s.m_total());
    CHECK(back.rho_w == doctest::Approx(s.rho_w).epsilon(1e-12));
    CHECK(back.sigma2_w == doctest::Approx(s.sigma2_w).epsilon(1e-12));
    CHECK(back.epsilon_a == s.epsilon_a);
    CHECK(back.n_sim == s.n_sim);
    CHECK(back.master_seed == s.master_seed);
    CHECK(back.redraw_pilots_per_trial == s.redraw_pilots_per_trial);
}

TEST_CASE("summary JSON reingests to the identical scenario") {
    Scenario s;
    s.k_devices = 80;
    s.set_mode_and_m(DeploymentMode::CellFree, 16);
    s.tau_p = 8;
    s.epsilon_a = 0.05;
    s.n_sim = 5;
    s.master_seed = 777;
    s.v_points = 11;
    const CampaignResult result = run_campaign(s);

    const nlohmann::json summary = summary_json(result);
    std::stringstream buf(summary.dump(2));
    const Scenario back = load_scenario(buf, "summary.json");

    CHECK(back.k_devices == s.k_devices);
    CHECK(back.mode == s.mode);
    CHECK(back.n_aps == s.n_aps);
    CHECK(back.antennas_per_ap == s.antennas_per_ap);
    CHECK(back.area_side == s.area_side);
    CHECK(back.epsilon_a == s.epsilon_a);
    CHECK(back.rho_w == s.rho_w);        // exact: doubles round-trip through JSON
    CHECK(back.sigma2_w == s.sigma2_w);  // exact
    CHECK(back.tau_p == s.tau_p);
    CHECK(back.n_sim == s.n_sim);
    CHECK(back.master_seed == s.master_seed);
    CHECK(back.v_min == s.v_min);
    CHECK(back.v_max == s.v_max);
    CHECK(back.v_points == s.v_points);

    // And the re-run campaign emits byte-identical roc.csv.
    const CampaignResult again = run_campaign(back);
    std::stringstream csv_a;
    std::stringstream csv_b;
    write_roc_csv(csv_a, result.scenario, result.roc);
    write_roc_csv(csv_b, again.scenario, again.roc);
    CHECK(csv_a.str() == csv_b.str());
}

TEST_CASE("roc csv has the pinned schema") {
    Scenario s;
    s.k_devices = 40;
    s.set_mode_and_m(DeploymentMode::CellFree, 8);
    s.tau_p = 8;
    s.epsilon_a = 0.1;
    s.n_sim = 2;
    s.master_seed = 5;
    s.v_points = 7;
    const CampaignResult result = run_campaign(s);

    std::stringstream buf;
    write_roc_csv(buf, result.scenario, result.roc);
    std::string line;
    std::getline(buf, line);
    CHECK(line.rfind("# seed=5 ", 0) == 0);  // scenario echo with the master seed
    std::getline(buf, line);
    CHECK(line == "v,p_fa,p_md,n_fa,n_miss,n_active_total,n_inactive_total,floor_fa,floor_md");
    std::size_t rows = 0;
    while (std::getline(buf, line)) {
        if (!line.empty()) {
            ++rows;
        }
    }
    CHECK(rows == 7);

    std::stringstream trials;
    write_trials_csv(trials, result);
    std::getline(trials, line);
    std::getline(trials, line);
    CHECK(line == "trial,status,n_active,n_miss_at_v_opt,n_fa_at_v_opt");
}
