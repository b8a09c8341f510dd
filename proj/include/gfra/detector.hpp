#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "gfra/channel.hpp"
#include "gfra/pilots.hpp"
#include "gfra/signal.hpp"

namespace gfra {

/// Raised when M * tau_p < K and the stacked system cannot be full rank.
struct UnderdeterminedSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when the system Gram cannot be factorized even after the
/// regularized retry.
struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precomputed Grams for one (channel, pilot book) pair.
///
/// The stacked M*tau_p x K system matrix is never materialized: its Gram is
/// the entrywise product of the channel Gram G^H G and the pilot Gram,
/// [sys]_{kl} = (g_k^H g_l) * sum_t conj(s_{k,t}) s_{l,t}.
/// The Cholesky factorization is computed on first use and cached; a failed
/// factorization is retried once with lambda*I added,
/// lambda = 1e-10 * trace / K.
class DetectorWorkspace {
  public:
    /// `pilot_gram_cache`, when given, must equal pilot_gram(pilots); it lets
    /// campaigns reuse the scenario-level pilot Gram across trials.
    static DetectorWorkspace build(const ChannelState& channel, const PilotBook& pilots,
                                   const Eigen::MatrixXcd* pilot_gram_cache = nullptr);

    const Eigen::MatrixXcd& channel_gram() const { return channel_gram_; }
    const Eigen::MatrixXcd& pilot_gram() const { return pilot_gram_; }
    const Eigen::MatrixXcd& system_gram() const { return system_gram_; }
    std::size_t devices() const { return static_cast<std::size_t>(system_gram_.rows()); }

    /// Lazily factorized system Gram; thread-safe.
    const Eigen::LLT<Eigen::MatrixXcd>& factorization() const;

    /// True when the cached factorization needed the regularized retry.
    bool regularized() const;

  private:
    Eigen::MatrixXcd channel_gram_;
    Eigen::MatrixXcd pilot_gram_;
    Eigen::MatrixXcd system_gram_;

    struct Cache {
        std::once_flag once;
        Eigen::LLT<Eigen::MatrixXcd> llt;
        bool regularized = false;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Left pseudo-inverse estimate gamma_hat = (Gamma^H Gamma)^{-1} Gamma^H y.
/// The right-hand side rhs_k = sum_t conj(s_{k,t}) (g_k^H y_t) is accumulated
/// per symbol; the solve reuses the workspace factorization.
Eigen::VectorXcd estimate_gamma(const DetectorWorkspace& ws, const ChannelState& channel,
                                const PilotBook& pilots, const StackedSignal& y);

/// Diagonal approximation: the same rhs divided entrywise by the Gram
/// diagonal. Valid when M * tau_p >> K; no cross-device solve.
Eigen::VectorXcd estimate_gamma_diagonal(const DetectorWorkspace& ws, const ChannelState& channel,
                                         const PilotBook& pilots, const StackedSignal& y);

/// Comparison baseline for ROC studies; identical to the diagonal estimator.
Eigen::VectorXcd matched_filter_baseline(const DetectorWorkspace& ws, const ChannelState& channel,
                                         const PilotBook& pilots, const StackedSignal& y);

/// Activity threshold gamma_th = v / sqrt(snr).
double threshold_for(double snr, double v);

/// Strict comparison |gamma_hat_k| > threshold_k per device.
std::vector<std::uint8_t> detect(const Eigen::VectorXcd& gamma_hat,
                                 const Eigen::VectorXd& thresholds);

struct DetectionResult {
    Eigen::VectorXcd gamma_hat;
    Eigen::VectorXd thresholds;
    std::vector<std::uint8_t> detected;
    double v = 0.0;
};

}  // namespace gfra
