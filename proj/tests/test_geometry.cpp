#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "gfra/geometry.hpp"

using namespace gfra;

TEST_CASE("single AP sits at the area center") {
    Rng rng = make_stream(1, "aps");
    const auto aps = place_aps(1, 500.0, 29.0, rng);
    REQUIRE(aps.size() == 1);
    CHECK(aps[0].x == doctest::Approx(250.0));
    CHECK(aps[0].y == doctest::Approx(250.0));
    CHECK(aps[0].z == doctest::Approx(29.0));
}

TEST_CASE("32 APs come from the 36 centers of a 6x6 grid") {
    Rng rng = make_stream(7, "aps");
    const auto aps = place_aps(32, 500.0, 29.0, rng);
    REQUIRE(aps.size() == 32);

    const double cell = 500.0 / 6.0;
    std::set<std::pair<int, int>> seen;
    for (const auto& p : aps) {
        CHECK(p.z == 29.0);
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 500.0);
        // Recover the grid cell and confirm the position is its center.
        const int gx = static_cast<int>(std::floor(p.x / cell));
        const int gy = static_cast<int>(std::floor(p.y / cell));
        CHECK(gx >= 0);
        CHECK(gx < 6);
        CHECK(p.x == doctest::Approx((gx + 0.5) * cell));
        CHECK(p.y == doctest::Approx((gy + 0.5) * cell));
        seen.insert({gx, gy});
    }
    CHECK(seen.size() == 32);  // all distinct
}

TEST_CASE("4 APs on a 2x2 grid must use all four centers") {
    Rng rng = make_stream(3, "aps");
    const auto aps = place_aps(4, 500.0, 29.0, rng);
    std::set<std::pair<double, double>> got;
    for (const auto& p : aps) {
        got.insert({p.x, p.y});
    }
    const std::set<std::pair<double, double>> expected = {
        {125.0, 125.0}, {375.0, 125.0}, {125.0, 375.0}, {375.0, 375.0}};
    CHECK(got == expected);
}

TEST_CASE("place_aps rejects zero count") {
    Rng rng = make_stream(1, "aps");
    CHECK_THROWS_AS(place_aps(0, 500.0, 29.0, rng), std::invalid_argument);
}

TEST_CASE("placement is deterministic in the seed") {
    Rng a = make_stream(42, "aps");
    Rng b = make_stream(42, "aps");
    const auto pa = place_aps(16, 500.0, 29.0, a);
    const auto pb = place_aps(16, 500.0, 29.0, b);
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) {
        CHECK(pa[i].x == pb[i].x);
        CHECK(pa[i].y == pb[i].y);
    }
}

TEST_CASE("devices stay inside the square with heights in range") {
    Rng rng = make_stream(5, "devices");
    const auto devs = place_devices(1000, 500.0, {1.0, 4.0}, rng);
    REQUIRE(devs.size() == 1000);
    for (const auto& p : devs) {
        CHECK(p.x >= 0.0);
        CHECK(p.x < 500.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y < 500.0);
        CHECK(p.z >= 1.0);
        CHECK(p.z <= 4.0);
    }
}

TEST_CASE("degenerate height range pins z exactly") {
    Rng rng = make_stream(5, "devices");
    const auto devs = place_devices(1, 100.0, {2.5, 2.5}, rng);
    CHECK(devs[0].z == 2.5);
}

TEST_CASE("empirical mean of x approaches area_side/2") {
    Rng rng = make_stream(11, "devices");
    const auto devs = place_devices(100000, 500.0, {1.0, 4.0}, rng);
    double sum = 0.0;
    for (const auto& p : devs) {
        sum += p.x;
    }
    const double mean = sum / static_cast<double>(devs.size());
    CHECK(mean == doctest::Approx(250.0).epsilon(0.01));
}

TEST_CASE("device layout scales with the area for a fixed stream") {
    Rng a = make_stream(9, "devices");
    Rng b = make_stream(9, "devices");
    const auto small = place_devices(100, 500.0, {1.0, 4.0}, a);
    const auto large = place_devices(100, 1000.0, {1.0, 4.0}, b);
    for (std::size_t i = 0; i < small.size(); ++i) {
        CHECK(large[i].x == doctest::Approx(2.0 * small[i].x).epsilon(1e-12));
        CHECK(large[i].y == doctest::Approx(2.0 * small[i].y).epsilon(1e-12));
        CHECK(large[i].z == small[i].z);
    }
}

TEST_CASE("link_distance basics") {
    CHECK(link_distance({0, 0, 0}, {3, 4, 0}) == doctest::Approx(5.0));
    CHECK(link_distance({0, 0, 0}, {0, 0, 28}) == doctest::Approx(28.0));
    CHECK(link_distance({250, 250, 29}, {250, 250, 1}) == doctest::Approx(28.0));
}

TEST_CASE("cell-free deployments have no coincident APs") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        Rng ap_rng = make_stream(seed, "aps");
        Rng dev_rng = make_stream(seed, "devices");
        const auto d = make_deployment(DeploymentMode::CellFree, 32, 50, 500.0, 29.0, {1.0, 4.0},
                                       ap_rng, dev_rng);
        std::set<std::pair<double, double>> unique;
        for (const auto& p : d.ap_positions) {
            unique.insert({p.x, p.y});
        }
        CHECK(unique.size() == d.ap_positions.size());
    }
}

TEST_CASE("co-located deployment carries exactly one AP") {
    Rng ap_rng = make_stream(1, "aps");
    Rng dev_rng = make_stream(1, "devices");
    const auto d = make_deployment(DeploymentMode::CoLocated, 1, 10, 500.0, 29.0, {1.0, 4.0},
                                   ap_rng, dev_rng);
    CHECK(d.ap_positions.size() == 1);
    CHECK_THROWS_AS(make_deployment(DeploymentMode::CoLocated, 2, 10, 500.0, 29.0, {1.0, 4.0},
                                    ap_rng, dev_rng),
                    std::invalid_argument);
}
