#include "gfra/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gfra {

std::size_t ActivityRealization::n_active() const {
    std::size_t n = 0;
    for (auto a : active) {
        n += a ? 1 : 0;
    }
    return n;
}

ActivityRealization draw_activity(std::size_t k, double epsilon_a, double rho_w,
                                  Rng& activity_rng, Rng& phase_rng) {
    if (epsilon_a < 0.0 || epsilon_a > 1.0) {
        throw std::invalid_argument("draw_activity: epsilon_a must be in [0, 1]");
    }
    if (k == 0) {
        throw std::invalid_argument("draw_activity: k must be >= 1");
    }
    ActivityRealization ar;
    ar.active.resize(k);
    ar.rho_w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(k), rho_w);
    ar.phase.resize(static_cast<Eigen::Index>(k));
    ar.gamma.resize(static_cast<Eigen::Index>(k));

    for (std::size_t i = 0; i < k; ++i) {
        ar.active[i] = uniform01(activity_rng) < epsilon_a ? 1 : 0;
    }
    for (std::size_t i = 0; i < k; ++i) {
        const double phi = 2.0 * std::numbers::pi * uniform01(phase_rng);
        ar.phase(static_cast<Eigen::Index>(i)) = phi;
        ar.gamma(static_cast<Eigen::Index>(i)) =
            ar.active[i] ? std::sqrt(rho_w) * std::polar(1.0, phi) : std::complex<double>{0.0, 0.0};
    }
    return ar;
}

ActivityRealization draw_activity(std::size_t k, double epsilon_a, double rho_w, Rng& rng) {
    return draw_activity(k, epsilon_a, rho_w, rng, rng);
}

StackedSignal synthesize(const ChannelState& channel, const PilotBook& pilots,
                         const ActivityRealization& activity, double sigma2_w, Rng& noise_rng) {
    const std::size_t m = channel.antennas();
    const std::size_t k = channel.devices();
    const std::size_t tau_p = pilots.tau_p();
    if (pilots.devices() != k || activity.devices() != k) {
        throw std::invalid_argument("synthesize: device count mismatch");
    }
    if (sigma2_w < 0.0) {
        throw std::invalid_argument("synthesize: sigma2 must be >= 0");
    }

    Eigen::MatrixXcd y(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(tau_p));
    if (sigma2_w > 0.0) {
        const double comp_std = std::sqrt(sigma2_w / 2.0);
        std::normal_distribution<double> n(0.0, comp_std);
        for (Eigen::Index t = 0; t < y.cols(); ++t) {
            for (Eigen::Index a = 0; a < y.rows(); ++a) {
                const double re = n(noise_rng);
                const double im = n(noise_rng);
                y(a, t) = {re, im};
            }
        }
    } else {
        y.setZero();
    }

    // Rank-one update per active device: column t gains g_k * s_{k,t} * gamma_k.
    for (std::size_t kk = 0; kk < k; ++kk) {
        if (!activity.active[kk]) {
            continue;
        }
        const auto ki = static_cast<Eigen::Index>(kk);
        y.noalias() += activity.gamma(ki) * channel.g.col(ki) * pilots.s.row(ki);
    }

    StackedSignal out;
    out.sigma2_w = sigma2_w;
    out.m = m;
    out.tau_p = tau_p;
    out.y = Eigen::Map<const Eigen::VectorXcd>(y.data(), y.size());
    return out;
}

}  // namespace gfra
