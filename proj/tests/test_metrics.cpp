#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gfra/metrics.hpp"
#include "gfra/rng.hpp"

using namespace gfra;

namespace {

/// Builds a trial with explicit truth and margins; a device is detected at
/// scale v exactly when its margin exceeds v.
TrialOutcome trial_with(std::vector<std::uint8_t> active, std::vector<double> margins) {
    TrialOutcome t;
    t.active = std::move(active);
    t.margin = Eigen::Map<const Eigen::VectorXd>(margins.data(),
                                                 static_cast<Eigen::Index>(margins.size()));
    return t;
}

}  // namespace

TEST_CASE("p_md counts undetected actives") {
    // K_a = {0, 1}, detected at v=1: only device 0.
    const auto t = trial_with({1, 1, 0}, {2.0, 0.5, 0.1});
    CHECK(p_md({t}, 1.0) == doctest::Approx(0.5));
    CHECK(p_fa({t}, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("perfect detection has zero miss probability") {
    const auto t = trial_with({1, 0, 1}, {5.0, 0.0, 5.0});
    CHECK(p_md({t}, 1.0) == 0.0);
}

TEST_CASE("p_md averages per-trial ratios") {
    const auto t1 = trial_with({1, 1}, {5.0, 5.0});          // ratio 0
    const auto t2 = trial_with({1, 1, 1, 1, 1},
                               {5.0, 5.0, 5.0, 5.0, 0.5});   // ratio 0.2
    CHECK(p_md({t1, t2}, 1.0) == doctest::Approx(0.1));
}

TEST_CASE("p_fa ratio uses the inactive count") {
    // K = 10, one active; detected set = {active, one inactive}.
    std::vector<std::uint8_t> active(10, 0);
    active[1] = 1;
    std::vector<double> margins(10, 0.0);
    margins[1] = 5.0;
    margins[2] = 5.0;
    const auto t = trial_with(active, margins);
    CHECK(p_fa({t}, 1.0) == doctest::Approx(1.0 / 9.0));
    CHECK(p_md({t}, 1.0) == 0.0);
}

TEST_CASE("all-inactive flagged gives p_fa one") {
    const auto t = trial_with({0, 0, 0, 0}, {5.0, 5.0, 5.0, 5.0});
    CHECK(p_fa({t}, 1.0) == doctest::Approx(1.0));
    CHECK(std::isnan(p_md({t}, 1.0)));  // no active devices anywhere
}

TEST_CASE("degenerate all-active case leaves p_fa undefined") {
    const auto t = trial_with({1, 1}, {5.0, 5.0});
    CHECK(std::isnan(p_fa({t}, 1.0)));
}

TEST_CASE("pooled variants aggregate counts") {
    const auto t1 = trial_with({1, 1}, {5.0, 0.5});  // 1 miss of 2
    const auto t2 = trial_with({1, 0}, {0.5, 5.0});  // 1 miss of 1, 1 fa of 1
    CHECK(p_md_pooled({t1, t2}, 1.0) == doctest::Approx(2.0 / 3.0));
    CHECK(p_fa_pooled({t1, t2}, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("floors follow the realized counts") {
    // One trial with 5 of 10 devices active.
    const auto t = trial_with({1, 1, 1, 1, 1, 0, 0, 0, 0, 0},
                              {0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    const auto f1 = probability_floors({t});
    CHECK(f1.floor_md == doctest::Approx(1.0 / 5.0));
    CHECK(f1.floor_fa == doctest::Approx(1.0 / 5.0));

    const auto f2 = probability_floors({t, t});
    CHECK(f2.floor_md == doctest::Approx(f1.floor_md / 2.0));
    CHECK(f2.floor_fa == doctest::Approx(f1.floor_fa / 2.0));

    CHECK_THROWS_AS(probability_floors({}), std::invalid_argument);
}

TEST_CASE("floors at the default scale approach 1e-6 and 1e-4") {
    // Synthetic realized counts: exactly 10 active per 1000-device trial.
    std::vector<TrialOutcome> trials;
    std::vector<std::uint8_t> active(1000, 0);
    std::fill_n(active.begin(), 10, std::uint8_t{1});
    for (int i = 0; i < 1000; ++i) {
        trials.push_back(make_activity_only_outcome(active));
    }
    const auto f = probability_floors(trials);
    CHECK(f.floor_md == doctest::Approx(1e-4));
    CHECK(f.floor_fa == doctest::Approx(1.0 / (1000.0 * 1000.0 - 10000.0)));
    CHECK(f.floor_fa == doctest::Approx(1e-6).epsilon(0.02));
}

TEST_CASE("degenerate floors report one") {
    const auto none = trial_with({0, 0}, {0.0, 0.0});
    const auto f = probability_floors({none});
    CHECK(f.floor_md == 1.0);
    const auto all = trial_with({1, 1}, {0.0, 0.0});
    const auto g = probability_floors({all});
    CHECK(g.floor_fa == 1.0);
}

TEST_CASE("sweep limits and monotonicity") {
    Rng rng(1234);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<TrialOutcome> trials;
    for (int i = 0; i < 20; ++i) {
        std::vector<std::uint8_t> active(50);
        std::vector<double> margins(50);
        for (int k = 0; k < 50; ++k) {
            active[static_cast<std::size_t>(k)] = u(rng) < 0.2 ? 1 : 0;
            // Margins loosely separated by truth so the ROC is non-trivial;
            // the offset keeps every margin above the smallest grid point.
            margins[static_cast<std::size_t>(k)] =
                0.01 + (active[static_cast<std::size_t>(k)] ? 5.0 * u(rng) : 1.0 * u(rng));
        }
        trials.push_back(trial_with(active, margins));
    }

    const auto grid = log_grid(1e-3, 1e2, 41);
    const auto sweep = sweep_roc(trials, grid);
    REQUIRE(sweep.points.size() == 41);

    // Extreme thresholds: everything detected at tiny v, nothing at huge v.
    CHECK(sweep.points.front().p_fa == doctest::Approx(1.0));
    CHECK(sweep.points.front().p_md == doctest::Approx(0.0));
    CHECK(sweep.points.back().p_fa == doctest::Approx(0.0));
    CHECK(sweep.points.back().p_md == doctest::Approx(1.0));

    for (std::size_t i = 1; i < sweep.points.size(); ++i) {
        CHECK(sweep.points[i].p_fa <= sweep.points[i - 1].p_fa);
        CHECK(sweep.points[i].p_md >= sweep.points[i - 1].p_md);
    }

    CHECK_THROWS_AS(sweep_roc(trials, {}), std::invalid_argument);
}

TEST_CASE("aggregation is invariant to trial order") {
    Rng rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<TrialOutcome> trials;
    for (int i = 0; i < 12; ++i) {
        std::vector<std::uint8_t> active(20);
        std::vector<double> margins(20);
        for (int k = 0; k < 20; ++k) {
            active[static_cast<std::size_t>(k)] = u(rng) < 0.3 ? 1 : 0;
            margins[static_cast<std::size_t>(k)] = 3.0 * u(rng);
        }
        trials.push_back(trial_with(active, margins));
    }
    auto shuffled = trials;
    std::reverse(shuffled.begin(), shuffled.end());

    const auto grid = log_grid(1e-2, 1e1, 11);
    const auto a = sweep_roc(trials, grid);
    const auto b = sweep_roc(shuffled, grid);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].n_fa == b.points[i].n_fa);
        CHECK(a.points[i].n_miss == b.points[i].n_miss);
        CHECK(a.points[i].p_fa == doctest::Approx(b.points[i].p_fa).epsilon(1e-15));
        CHECK(a.points[i].p_md == doctest::Approx(b.points[i].p_md).epsilon(1e-15));
    }
}

TEST_CASE("v_opt minimizes the floor-normalized worst error") {
    // Margins arranged so v = 1 separates truth perfectly; other grid points
    // must then lose on the normalized objective.
    const auto t = trial_with({1, 1, 0, 0, 0, 0}, {2.0, 3.0, 0.5, 0.4, 0.3, 0.2});
    const auto sweep = sweep_roc({t}, {0.1, 1.0, 10.0});
    CHECK(sweep.at_v_opt().v == doctest::Approx(1.0));
    CHECK(sweep.at_v_opt().n_fa == 0);
    CHECK(sweep.at_v_opt().n_miss == 0);
}

TEST_CASE("v_opt ties break toward smaller p_md") {
    // Both v = 0.1 and v = 0.3 give one false alarm and no miss; v = 5 gives
    // one miss and no false alarm. Equal objectives, lower p_md wins.
    const auto t = trial_with({1, 0, 0}, {1.0, 0.5, 0.05});
    const auto f = probability_floors({t});
    REQUIRE(f.floor_fa == doctest::Approx(0.5));
    REQUIRE(f.floor_md == doctest::Approx(1.0));
    const auto sweep = sweep_roc({t}, {0.1, 5.0});
    // v = 0.1: p_fa = 0.5, p_md = 0 -> objective 1; v = 5: p_fa = 0, p_md = 1
    // -> objective 1. The tie must resolve to p_md = 0, i.e. v = 0.1.
    CHECK(sweep.at_v_opt().v == doctest::Approx(0.1));
    CHECK(sweep.at_v_opt().p_md == 0.0);
}

TEST_CASE("log grid is inclusive and sized") {
    const auto g = log_grid(1e-2, 1e5, 71);
    REQUIRE(g.size() == 71);
    CHECK(g.front() == doctest::Approx(1e-2));
    CHECK(g.back() == doctest::Approx(1e5));
    CHECK(std::is_sorted(g.begin(), g.end()));
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_grid(1.0, 1.0, 0), std::invalid_argument);
}
