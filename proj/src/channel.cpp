#include "gfra/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace gfra {

double path_loss_db(double distance_m, double shadowing_db) {
    if (distance_m <= 0.0) {
        throw std::invalid_argument("path_loss_db: distance must be > 0");
    }
    const double d_km = distance_m / 1000.0;
    return 128.95 + 23.2 * std::log10(d_km) + shadowing_db;
}

double path_loss_db(double distance_m, Rng& shadow_rng) {
    std::normal_distribution<double> chi(0.0, kShadowingStdDb);
    return path_loss_db(distance_m, chi(shadow_rng));
}

LargeScale large_scale_for(const Deployment& deployment, Rng& shadow_rng) {
    const auto k = deployment.device_positions.size();
    const auto n = deployment.ap_positions.size();
    LargeScale ls;
    ls.beta_db.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n));
    std::normal_distribution<double> chi(0.0, kShadowingStdDb);
    for (std::size_t ki = 0; ki < k; ++ki) {
        for (std::size_t ni = 0; ni < n; ++ni) {
            const double d =
                link_distance(deployment.device_positions[ki], deployment.ap_positions[ni]);
            ls.beta_db(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(ni)) =
                path_loss_db(d, chi(shadow_rng));
        }
    }
    return ls;
}

Eigen::MatrixXcd small_scale(std::size_t m_rows, std::size_t k_cols, Rng& rng) {
    if (m_rows == 0 || k_cols == 0) {
        throw std::invalid_argument("small_scale: dimensions must be >= 1");
    }
    Eigen::MatrixXcd h(static_cast<Eigen::Index>(m_rows), static_cast<Eigen::Index>(k_cols));
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
        for (Eigen::Index r = 0; r < h.rows(); ++r) {
            h(r, c) = complex_normal(rng);
        }
    }
    return h;
}

ChannelState assemble_channel_from(const Deployment& deployment, std::size_t antennas_per_ap,
                                   const LargeScale& large_scale,
                                   const Eigen::MatrixXcd& small_scale_matrix) {
    const auto n_aps = deployment.ap_positions.size();
    const auto k = deployment.device_positions.size();
    if (deployment.mode == DeploymentMode::CellFree && antennas_per_ap != 1) {
        throw std::invalid_argument("assemble_channel: cell-free APs are single-antenna");
    }
    const std::size_t m = n_aps * antennas_per_ap;
    if (static_cast<std::size_t>(large_scale.beta_db.rows()) != k ||
        static_cast<std::size_t>(large_scale.beta_db.cols()) != n_aps) {
        throw std::invalid_argument("assemble_channel: large-scale dimensions mismatch");
    }
    if (static_cast<std::size_t>(small_scale_matrix.rows()) != m ||
        static_cast<std::size_t>(small_scale_matrix.cols()) != k) {
        throw std::invalid_argument("assemble_channel: small-scale dimensions mismatch");
    }

    ChannelState cs;
    cs.antenna_to_ap.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        cs.antenna_to_ap[a] = a / antennas_per_ap;
    }

    const Eigen::MatrixXd gain = large_scale.linear_gain();  // K x N
    cs.g.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
    for (Eigen::Index kk = 0; kk < cs.g.cols(); ++kk) {
        for (Eigen::Index mm = 0; mm < cs.g.rows(); ++mm) {
            const auto ap = static_cast<Eigen::Index>(cs.antenna_to_ap[static_cast<std::size_t>(mm)]);
            cs.g(mm, kk) = std::sqrt(gain(kk, ap)) * small_scale_matrix(mm, kk);
        }
    }
    return cs;
}

ChannelState assemble_channel(const Deployment& deployment, std::size_t antennas_per_ap,
                              const LargeScale& large_scale, Rng& fading_rng) {
    const std::size_t m = deployment.ap_positions.size() * antennas_per_ap;
    const std::size_t k = deployment.device_positions.size();
    return assemble_channel_from(deployment, antennas_per_ap, large_scale,
                                 small_scale(m, k, fading_rng));
}

double snr_of_device(const Eigen::VectorXcd& g_k, const Eigen::VectorXcd& s_k, double rho_w,
                     double sigma2_w) {
    if (sigma2_w <= 0.0) {
        throw std::invalid_argument("snr_of_device: sigma2 must be > 0");
    }
    return rho_w * g_k.squaredNorm() * s_k.squaredNorm() / sigma2_w;
}

}  // namespace gfra
