#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "gfra/channel.hpp"
#include "gfra/pilots.hpp"

namespace gfra::oracle {

/// Explicitly materialized M*tau_p x K stacked matrix: block row t equals
/// G * diag(s_{0,t}, ..., s_{K-1,t}). Intended for small verification
/// instances only; the production path never forms it.
Eigen::MatrixXcd materialize_stacked_matrix(const ChannelState& channel, const PilotBook& pilots);

/// Least-squares solve against the dense matrix via column-pivoted QR.
/// Deliberately a different algebraic route than the structured estimator.
Eigen::VectorXcd dense_least_squares(const Eigen::MatrixXcd& stacked, const Eigen::VectorXcd& y);

struct EquivalenceReport {
    int instances = 0;
    double worst_rel_err = 0.0;
    int worst_seed = -1;
    bool pass = false;
};

/// Runs `instances` random small instances with dimensions drawn in
/// [1, m_max] x [1, k_max] x [1, tau_max] (keeping M*tau_p >= K and skipping
/// ill-conditioned draws), comparing the structured estimator against the
/// dense route. Fails if any relative error exceeds tol.
EquivalenceReport equivalence_suite(std::size_t m_max, std::size_t k_max, std::size_t tau_max,
                                    int instances, std::uint64_t seed, double tol);

}  // namespace gfra::oracle
