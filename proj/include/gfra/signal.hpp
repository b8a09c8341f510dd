#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "gfra/channel.hpp"
#include "gfra/pilots.hpp"
#include "gfra/rng.hpp"

namespace gfra {

/// Per-device activity bits, transmit powers, phase offsets and the resulting
/// complex coefficients gamma_k = sqrt(rho_k) a_k e^{j phi_k}.
struct ActivityRealization {
    std::vector<std::uint8_t> active;  // a_k
    Eigen::VectorXd rho_w;             // rho_k
    Eigen::VectorXd phase;             // phi_k in [0, 2*pi)
    Eigen::VectorXcd gamma;            // gamma_k

    std::size_t devices() const { return active.size(); }
    std::size_t n_active() const;
};

/// a_k ~ Bernoulli(epsilon_a) from activity_rng, phi_k ~ U[0, 2*pi) from
/// phase_rng; every device draws both regardless of its activity bit.
ActivityRealization draw_activity(std::size_t k, double epsilon_a, double rho_w,
                                  Rng& activity_rng, Rng& phase_rng);

/// Single-stream convenience: bits first, then phases, from one engine.
ActivityRealization draw_activity(std::size_t k, double epsilon_a, double rho_w, Rng& rng);

/// Received preamble stacked over symbols: y = [y_0; ...; y_{tau_p-1}],
/// length M * tau_p.
struct StackedSignal {
    Eigen::VectorXcd y;
    double sigma2_w = 0.0;
    std::size_t m = 0;
    std::size_t tau_p = 0;

    /// View as the M x tau_p matrix whose column t is y_t.
    Eigen::Map<const Eigen::MatrixXcd> per_symbol() const {
        return {y.data(), static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(tau_p)};
    }
};

/// y_t = G D_t gamma + w_t for every pilot symbol t, with w i.i.d.
/// CN(0, sigma2) drawn per antenna per symbol in stacking order. The sum runs
/// over active devices only; the M*tau_p x K stacked matrix is never formed.
StackedSignal synthesize(const ChannelState& channel, const PilotBook& pilots,
                         const ActivityRealization& activity, double sigma2_w, Rng& noise_rng);

}  // namespace gfra
