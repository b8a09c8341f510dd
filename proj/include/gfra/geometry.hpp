#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gfra/rng.hpp"

namespace gfra {

struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

enum class DeploymentMode { CoLocated, CellFree };

/// AP and device placements for one trial. CoLocated carries exactly one AP
/// entry (the array site); CellFree carries one entry per single-antenna AP.
struct Deployment {
    DeploymentMode mode = DeploymentMode::CoLocated;
    std::vector<Position> ap_positions;
    std::vector<Position> device_positions;
    double area_side = 0.0;
};

/// Places n_aps access points in a square area of side area_side.
/// A single AP sits at the area center. Otherwise a ceil(sqrt(N)) x
/// ceil(sqrt(N)) grid of cell centers is built and N distinct cells are picked
/// uniformly at random without replacement.
std::vector<Position> place_aps(std::size_t n_aps, double area_side, double ap_height, Rng& rng);

/// k device positions, x/y uniform over the square, z uniform over
/// height_range. The draw is a unit-square sample scaled by area_side, so two
/// areas with the same stream share the same relative layout.
std::vector<Position> place_devices(std::size_t k, double area_side,
                                    std::pair<double, double> height_range, Rng& rng);

/// 3D Euclidean distance in meters.
double link_distance(const Position& p1, const Position& p2);

Deployment make_deployment(DeploymentMode mode, std::size_t n_aps, std::size_t k_devices,
                           double area_side, double ap_height,
                           std::pair<double, double> device_height_range, Rng& ap_rng,
                           Rng& device_rng);

}  // namespace gfra
