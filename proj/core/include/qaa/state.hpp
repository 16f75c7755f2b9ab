#pragma once

#include <bit>
#include <complex>
#include <cstdint>

#include <Eigen/Core>

#include "qaa/rng.hpp"

namespace qaa {

// State vectors are plain Eigen vectors of 2^N amplitudes; amplitude index b
// encodes the spin configuration per spin.hpp.
using StateVector = Eigen::VectorXcd;

inline StateVector basis_state(int n_spins, std::uint32_t b) {
    StateVector psi = StateVector::Zero(Eigen::Index{1} << n_spins);
    psi[static_cast<Eigen::Index>(b)] = 1.0;
    return psi;
}

// Ground state of +sum_i X_i: every spin in |->_x, i.e. amplitudes (-1)^popcount(b)/sqrt(2^N).
inline StateVector x_driver_ground(int n_spins) {
    const Eigen::Index d = Eigen::Index{1} << n_spins;
    const double a = 1.0 / std::sqrt(static_cast<double>(d));
    StateVector psi(d);
    for (Eigen::Index b = 0; b < d; ++b)
        psi[b] = (std::popcount(static_cast<std::uint64_t>(b)) & 1) ? -a : a;
    return psi;
}

inline Eigen::VectorXd random_unit_vector(Eigen::Index dim, Rng& rng) {
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = rng.uniform(-1.0, 1.0);
    v.normalize();
    return v;
}

}  // namespace qaa
