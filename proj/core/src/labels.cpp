#include "qaa/labels.hpp"

#include <stdexcept>

namespace qaa {

StateLabel label_state(const Eigen::VectorXd& psi, int n_spins) {
    if (n_spins < 1 || n_spins > 26) throw std::invalid_argument("label_state: bad n_spins");
    if (psi.size() != (Eigen::Index{1} << n_spins))
        throw std::invalid_argument("label_state: vector dimension does not match n_spins");
    Eigen::Index best = 0;
    double best_w = psi[0] * psi[0];
    for (Eigen::Index b = 1; b < psi.size(); ++b) {
        const double w = psi[b] * psi[b];
        if (w > best_w) {
            best_w = w;
            best = b;
        }
    }
    return {SpinConfiguration{static_cast<std::uint32_t>(best), n_spins}, best_w};
}

}  // namespace qaa
