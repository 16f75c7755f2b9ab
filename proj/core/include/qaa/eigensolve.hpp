#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qaa/operators.hpp"

namespace qaa {

struct SolverOptions {
    double tol = 1e-9;               // residual tolerance ||Hv - Ev||
    int max_iter = 4000;             // expansion steps, summed over restarts
    std::uint64_t seed = 12345;      // start-block seed
    int dense_threshold = 1024;      // dim <= threshold solves densely
    int max_basis = 0;               // 0 = pick automatically
};

struct SpectrumSlice {
    double param = 0.0;
    std::vector<double> energies;               // ascending
    std::vector<Eigen::VectorXd> eigenvectors;  // empty when not requested
    std::vector<double> residual_norms;
};

class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, std::vector<double> energies,
                  std::vector<double> residuals)
        : std::runtime_error(what),
          best_energies(std::move(energies)),
          best_residuals(std::move(residuals)) {}
    std::vector<double> best_energies;
    std::vector<double> best_residuals;
};

// k lowest eigenpairs.  Diagonal operators take an exact fast path; small
// dimensions are solved densely; otherwise a seeded block Krylov iteration with
// full reorthogonalization, Rayleigh-Ritz extraction, block size k+2 and thick
// restart.  Deterministic for fixed options.
SpectrumSlice lowest_k(const KLocalOperator& hamiltonian, int k,
                       const SolverOptions& opts = {}, bool want_vectors = true);

}  // namespace qaa
