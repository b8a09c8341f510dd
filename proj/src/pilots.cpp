#include "gfra/pilots.hpp"

#include <stdexcept>

namespace gfra {

PilotBook generate_pilots(std::size_t k, std::size_t tau_p, Rng& rng) {
    if (k == 0 || tau_p == 0) {
        throw std::invalid_argument("generate_pilots: counts must be >= 1");
    }
    PilotBook book;
    book.s.resize(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(tau_p));
    for (Eigen::Index r = 0; r < book.s.rows(); ++r) {
        for (Eigen::Index c = 0; c < book.s.cols(); ++c) {
            book.s(r, c) = complex_normal(rng);
        }
    }
    return book;
}

Eigen::MatrixXcd pilot_gram(const PilotBook& book) {
    const Eigen::Index k = book.s.rows();
    Eigen::MatrixXcd gram(k, k);
    gram.setZero();
    // [gram]_{kl} = s_k^* . s_l = [conj(S) S^T]_{kl}
    gram.selfadjointView<Eigen::Lower>().rankUpdate(book.s.conjugate());
    gram.triangularView<Eigen::StrictlyUpper>() = gram.adjoint();
    return gram;
}

}  // namespace gfra
