#include "gfra/detector.hpp"

#include <cstdio>

namespace gfra {

DetectorWorkspace DetectorWorkspace::build(const ChannelState& channel, const PilotBook& pilots,
                                           const Eigen::MatrixXcd* pilot_gram_cache) {
    const std::size_t m = channel.antennas();
    const std::size_t k = channel.devices();
    const std::size_t tau_p = pilots.tau_p();
    if (pilots.devices() != k) {
        throw std::invalid_argument("DetectorWorkspace: device count mismatch");
    }
    if (m * tau_p < k) {
        throw UnderdeterminedSystemError(
            "DetectorWorkspace: M * tau_p < K, stacked system cannot be full rank");
    }

    DetectorWorkspace ws;
    const auto ki = static_cast<Eigen::Index>(k);
    ws.channel_gram_.setZero(ki, ki);
    ws.channel_gram_.selfadjointView<Eigen::Lower>().rankUpdate(channel.g.adjoint());
    ws.channel_gram_.triangularView<Eigen::StrictlyUpper>() = ws.channel_gram_.adjoint();
    if (pilot_gram_cache != nullptr) {
        if (pilot_gram_cache->rows() != ki || pilot_gram_cache->cols() != ki) {
            throw std::invalid_argument("DetectorWorkspace: pilot Gram cache dimension mismatch");
        }
        ws.pilot_gram_ = *pilot_gram_cache;
    } else {
        ws.pilot_gram_ = gfra::pilot_gram(pilots);
    }
    ws.system_gram_ = ws.channel_gram_.cwiseProduct(ws.pilot_gram_);
    return ws;
}

const Eigen::LLT<Eigen::MatrixXcd>& DetectorWorkspace::factorization() const {
    std::call_once(cache_->once, [this] {
        cache_->llt.compute(system_gram_);
        if (cache_->llt.info() == Eigen::Success) {
            return;
        }
        const double lambda =
            1e-10 * system_gram_.trace().real() / static_cast<double>(system_gram_.rows());
        std::fprintf(stderr,
                     "gfra: system Gram factorization failed, retrying with lambda = %g\n",
                     lambda);
        Eigen::MatrixXcd regularized = system_gram_;
        regularized.diagonal().array() += lambda;
        cache_->llt.compute(regularized);
        cache_->regularized = true;
        if (cache_->llt.info() != Eigen::Success) {
            throw SingularSystemError("DetectorWorkspace: system Gram is singular");
        }
    });
    if (cache_->llt.info() != Eigen::Success) {
        throw SingularSystemError("DetectorWorkspace: system Gram is singular");
    }
    return cache_->llt;
}

bool DetectorWorkspace::regularized() const { return cache_->regularized; }

namespace {

Eigen::VectorXcd accumulate_rhs(const ChannelState& channel, const PilotBook& pilots,
                                const StackedSignal& y) {
    if (y.m != channel.antennas() || y.tau_p != pilots.tau_p() ||
        static_cast<std::size_t>(y.y.size()) != y.m * y.tau_p) {
        throw std::invalid_argument("estimate_gamma: stacked signal dimensions mismatch");
    }
    // rhs_k = sum_t conj(s_{k,t}) (g_k^H y_t); Z = G^H Y gives the inner
    // products for all devices and symbols at once.
    const auto y_mat = y.per_symbol();
    Eigen::MatrixXcd z = channel.g.adjoint() * y_mat;  // K x tau_p
    return z.cwiseProduct(pilots.s.conjugate()).rowwise().sum();
}

}  // namespace

Eigen::VectorXcd estimate_gamma(const DetectorWorkspace& ws, const ChannelState& channel,
                                const PilotBook& pilots, const StackedSignal& y) {
    if (ws.devices() != channel.devices()) {
        throw std::invalid_argument("estimate_gamma: workspace/channel mismatch");
    }
    const Eigen::VectorXcd rhs = accumulate_rhs(channel, pilots, y);
    return ws.factorization().solve(rhs);
}

Eigen::VectorXcd estimate_gamma_diagonal(const DetectorWorkspace& ws, const ChannelState& channel,
                                         const PilotBook& pilots, const StackedSignal& y) {
    if (ws.devices() != channel.devices()) {
        throw std::invalid_argument("estimate_gamma_diagonal: workspace/channel mismatch");
    }
    const Eigen::VectorXcd rhs = accumulate_rhs(channel, pilots, y);
    const Eigen::VectorXd diag = ws.system_gram().diagonal().real();
    if ((diag.array() <= 0.0).any()) {
        throw std::invalid_argument(
            "estimate_gamma_diagonal: zero Gram diagonal (dead channel or pilot)");
    }
    return rhs.array() / diag.array().cast<std::complex<double>>();
}

Eigen::VectorXcd matched_filter_baseline(const DetectorWorkspace& ws, const ChannelState& channel,
                                         const PilotBook& pilots, const StackedSignal& y) {
    return estimate_gamma_diagonal(ws, channel, pilots, y);
}

double threshold_for(double snr, double v) {
    if (snr <= 0.0) {
        throw std::invalid_argument("threshold_for: snr must be > 0");
    }
    return v / std::sqrt(snr);
}

std::vector<std::uint8_t> detect(const Eigen::VectorXcd& gamma_hat,
                                 const Eigen::VectorXd& thresholds) {
    if (gamma_hat.size() != thresholds.size()) {
        throw std::invalid_argument("detect: length mismatch");
    }
    std::vector<std::uint8_t> out(static_cast<std::size_t>(gamma_hat.size()));
    for (Eigen::Index i = 0; i < gamma_hat.size(); ++i) {
        out[static_cast<std::size_t>(i)] = std::abs(gamma_hat(i)) > thresholds(i) ? 1 : 0;
    }
    return out;
}

}  // namespace gfra
