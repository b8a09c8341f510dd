#include "gfra/geometry.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gfra {

std::vector<Position> place_aps(std::size_t n_aps, double area_side, double ap_height, Rng& rng) {
    if (n_aps == 0) {
        throw std::invalid_argument("place_aps: n_aps must be >= 1");
    }
    if (area_side <= 0.0) {
        throw std::invalid_argument("place_aps: area_side must be > 0");
    }
    if (n_aps == 1) {
        return {Position{area_side / 2.0, area_side / 2.0, ap_height}};
    }

    const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_aps))));
    const double cell = area_side / static_cast<double>(side);

    // Enumerate grid cells row-major, then pick n_aps distinct ones by a
    // partial Fisher-Yates shuffle.
    std::vector<std::size_t> cells(side * side);
    std::iota(cells.begin(), cells.end(), std::size_t{0});
    std::vector<Position> out;
    out.reserve(n_aps);
    for (std::size_t i = 0; i < n_aps; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, cells.size() - 1);
        std::swap(cells[i], cells[pick(rng)]);
        const std::size_t gx = cells[i] % side;
        const std::size_t gy = cells[i] / side;
        out.push_back(Position{(static_cast<double>(gx) + 0.5) * cell,
                               (static_cast<double>(gy) + 0.5) * cell, ap_height});
    }
    return out;
}

std::vector<Position> place_devices(std::size_t k, double area_side,
                                    std::pair<double, double> height_range, Rng& rng) {
    if (k == 0) {
        throw std::invalid_argument("place_devices: k must be >= 1");
    }
    if (area_side <= 0.0) {
        throw std::invalid_argument("place_devices: area_side must be > 0");
    }
    const auto [h_min, h_max] = height_range;
    if (h_max < h_min) {
        throw std::invalid_argument("place_devices: height range inverted");
    }
    std::vector<Position> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double ux = uniform01(rng);
        const double uy = uniform01(rng);
        const double uz = uniform01(rng);
        out.push_back(
            Position{ux * area_side, uy * area_side, h_min + uz * (h_max - h_min)});
    }
    return out;
}

double link_distance(const Position& p1, const Position& p2) {
    const double dx = p1.x - p2.x;
    const double dy = p1.y - p2.y;
    const double dz = p1.z - p2.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

Deployment make_deployment(DeploymentMode mode, std::size_t n_aps, std::size_t k_devices,
                           double area_side, double ap_height,
                           std::pair<double, double> device_height_range, Rng& ap_rng,
                           Rng& device_rng) {
    if (mode == DeploymentMode::CoLocated && n_aps != 1) {
        throw std::invalid_argument("make_deployment: co-located requires exactly one AP");
    }
    if (mode == DeploymentMode::CellFree && n_aps < 2) {
        throw std::invalid_argument("make_deployment: cell-free requires n_aps >= 2");
    }
    Deployment d;
    d.mode = mode;
    d.area_side = area_side;
    d.ap_positions = place_aps(n_aps, area_side, ap_height, ap_rng);
    d.device_positions = place_devices(k_devices, area_side, device_height_range, device_rng);
    return d;
}

}  // namespace gfra
