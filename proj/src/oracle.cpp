#include "gfra/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "gfra/detector.hpp"
#include "gfra/signal.hpp"

namespace gfra::oracle {

Eigen::MatrixXcd materialize_stacked_matrix(const ChannelState& channel, const PilotBook& pilots) {
    const auto m = static_cast<Eigen::Index>(channel.antennas());
    const auto k = static_cast<Eigen::Index>(channel.devices());
    const auto tau_p = static_cast<Eigen::Index>(pilots.tau_p());
    if (static_cast<Eigen::Index>(pilots.devices()) != k) {
        throw std::invalid_argument("materialize_stacked_matrix: device count mismatch");
    }
    Eigen::MatrixXcd stacked(m * tau_p, k);
    for (Eigen::Index t = 0; t < tau_p; ++t) {
        for (Eigen::Index kk = 0; kk < k; ++kk) {
            stacked.block(t * m, kk, m, 1) = channel.g.col(kk) * pilots.s(kk, t);
        }
    }
    return stacked;
}

Eigen::VectorXcd dense_least_squares(const Eigen::MatrixXcd& stacked, const Eigen::VectorXcd& y) {
    if (stacked.rows() != y.size()) {
        throw std::invalid_argument("dense_least_squares: dimension mismatch");
    }
    return stacked.colPivHouseholderQr().solve(y);
}

namespace {

/// Smallest-to-largest singular value ratio of the dense stacked matrix.
double condition_margin(const Eigen::MatrixXcd& stacked) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) <= 0.0) {
        return 0.0;
    }
    return sv(sv.size() - 1) / sv(0);
}

}  // namespace

EquivalenceReport equivalence_suite(std::size_t m_max, std::size_t k_max, std::size_t tau_max,
                                    int instances, std::uint64_t seed, double tol) {
    EquivalenceReport report;
    report.instances = instances;

    for (int i = 0; i < instances; ++i) {
        Rng rng = make_stream(seed, "oracle-instance", static_cast<std::uint64_t>(i));
        std::uniform_int_distribution<std::size_t> pick_m(1, m_max);
        std::uniform_int_distribution<std::size_t> pick_k(1, k_max);
        std::uniform_int_distribution<std::size_t> pick_tau(1, tau_max);

        ChannelState channel;
        PilotBook pilots;
        Eigen::MatrixXcd stacked;
        // Redraw until the instance is full rank with some conditioning
        // margin; the comparison tolerance assumes a non-degenerate system.
        for (;;) {
            const std::size_t m = pick_m(rng);
            const std::size_t k = pick_k(rng);
            const std::size_t tau_p = pick_tau(rng);
            if (m * tau_p < k) {
                continue;
            }
            channel.g = small_scale(m, k, rng);
            channel.antenna_to_ap.assign(m, 0);
            pilots = generate_pilots(k, tau_p, rng);
            stacked = materialize_stacked_matrix(channel, pilots);
            if (condition_margin(stacked) > 1e-2) {
                break;
            }
        }

        const std::size_t k = channel.devices();
        ActivityRealization activity = draw_activity(k, 0.5, 1.0, rng);
        StackedSignal y = synthesize(channel, pilots, activity, 0.1, rng);

        const auto ws = DetectorWorkspace::build(channel, pilots);
        const Eigen::VectorXcd structured = estimate_gamma(ws, channel, pilots, y);
        const Eigen::VectorXcd dense = dense_least_squares(stacked, y.y);

        const double scale = std::max(dense.norm(), 1e-300);
        const double rel = (structured - dense).norm() / scale;
        if (rel > report.worst_rel_err) {
            report.worst_rel_err = rel;
            report.worst_seed = i;
        }
    }
    report.pass = report.worst_rel_err <= tol;
    return report;
}

}  // namespace gfra::oracle
