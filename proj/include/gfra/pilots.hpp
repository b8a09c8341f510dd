#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "gfra/rng.hpp"

namespace gfra {

/// Per-device preamble book; row k is the length-tau_p pilot of device k.
struct PilotBook {
    Eigen::MatrixXcd s;  // K x tau_p

    std::size_t devices() const { return static_cast<std::size_t>(s.rows()); }
    std::size_t tau_p() const { return static_cast<std::size_t>(s.cols()); }
};

/// K x tau_p i.i.d. CN(0,1) pilot symbols, drawn row-major (per device).
PilotBook generate_pilots(std::size_t k, std::size_t tau_p, Rng& rng);

/// Hermitian K x K Gram, entry (k,l) = sum_t conj(s_{k,t}) s_{l,t}.
Eigen::MatrixXcd pilot_gram(const PilotBook& book);

}  // namespace gfra
