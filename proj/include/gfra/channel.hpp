#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "gfra/geometry.hpp"
#include "gfra/rng.hpp"

namespace gfra {

/// Shadowing standard deviation in dB.
inline constexpr double kShadowingStdDb = 7.8;

/// Per-link large-scale loss in dB, beta(k, n) for device k and AP n.
struct LargeScale {
    Eigen::MatrixXd beta_db;  // K x N

    /// Linear amplitude-squared gains, 10^(-beta_db/10).
    Eigen::MatrixXd linear_gain() const {
        return Eigen::pow(10.0, (-beta_db / 10.0).array()).matrix();
    }
};

/// Urban 868 MHz path loss: 128.95 + 23.2 log10(d_km) + chi, chi in dB.
double path_loss_db(double distance_m, double shadowing_db);

/// Same, drawing chi ~ N(0, 7.8 dB).
double path_loss_db(double distance_m, Rng& shadow_rng);

/// Large-scale losses for every (device, AP) link of a deployment; shadowing
/// i.i.d. per link, drawn device-major.
LargeScale large_scale_for(const Deployment& deployment, Rng& shadow_rng);

/// i.i.d. CN(0,1) matrix, entries drawn column-major.
Eigen::MatrixXcd small_scale(std::size_t m_rows, std::size_t k_cols, Rng& rng);

/// Prior-CSI matrix G (M x K, column k = channel of device k over all M
/// antennas) plus the antenna-to-AP mapping.
struct ChannelState {
    Eigen::MatrixXcd g;
    std::vector<std::size_t> antenna_to_ap;

    std::size_t antennas() const { return static_cast<std::size_t>(g.rows()); }
    std::size_t devices() const { return static_cast<std::size_t>(g.cols()); }
};

/// Core assembly from an explicit small-scale matrix (M x K). Co-located: all
/// antennas of the single AP share one beta per device. Cell-free: antenna m
/// belongs to AP m (single-antenna APs).
ChannelState assemble_channel_from(const Deployment& deployment, std::size_t antennas_per_ap,
                                   const LargeScale& large_scale,
                                   const Eigen::MatrixXcd& small_scale_matrix);

/// Assembly with i.i.d. CN(0,1) small-scale drawn from fading_rng.
ChannelState assemble_channel(const Deployment& deployment, std::size_t antennas_per_ap,
                              const LargeScale& large_scale, Rng& fading_rng);

/// SNR_k = rho * ||g_k||^2 * ||s_k||^2 / sigma^2 (linear ratio).
double snr_of_device(const Eigen::VectorXcd& g_k, const Eigen::VectorXcd& s_k, double rho_w,
                     double sigma2_w);

}  // namespace gfra
