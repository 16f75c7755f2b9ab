#pragma once

#include <Eigen/Core>

#include "qaa/spin.hpp"

namespace qaa {

struct StateLabel {
    SpinConfiguration config;
    double weight = 0.0;  // |amplitude|^2 carried by the dominant configuration
};

// Dominant classical configuration of an eigenvector: argmax_b |psi_b|^2,
// ties resolved to the smallest basis index.  weight < 0.5 means no single
// configuration holds a majority and the label should be treated as ambiguous.
StateLabel label_state(const Eigen::VectorXd& psi, int n_spins);

}  // namespace qaa
