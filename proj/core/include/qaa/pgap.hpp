#pragma once

#include <optional>

#include "qaa/cost.hpp"
#include "qaa/eigensolve.hpp"
#include "qaa/perturbation.hpp"
#include "qaa/spin.hpp"

namespace qaa {

struct PerturbativeGap {
    double estimate = 0.0;
    int hamming_d = 0;
    std::optional<double> exact;  // full probed-operator gap, filled when N <= 14
};

// Lowest-order degenerate-perturbation estimate of the avoided-crossing gap a
// transverse probe delta_lambda * sum_i X_i opens between two (near-)degenerate
// classical configurations at Hamming distance d:
//
//   estimate = delta_lambda^d * max over single-flip chains a -> ... -> b of
//              prod_{intermediates m} 1 / |E(a) - E(m)|
//
// Order-of-magnitude estimator by construction: the path sum is replaced by its
// largest term and all prefactors are dropped.  When N <= 14 the exact avoided
// gap (E1 - E0 of the probed operator) is solved alongside for comparison.
// Throws ResonanceError when an intermediate configuration is degenerate with
// `config_a` (the chain product is undefined there), and rejects d > 20 (the
// subset scan is O(2^d * d)).
PerturbativeGap perturbative_gap(const ClassicalCostFunction& cost,
                                 const SpinConfiguration& config_a,
                                 const SpinConfiguration& config_b, double delta_lambda);

// Exact probed gap E1 - E0 of  cost + delta_lambda * sum_i X_i,  for checking
// the estimate against full diagonalization.
double probed_gap_exact(const ClassicalCostFunction& cost, double delta_lambda,
                        const SolverOptions& solver = {});

}  // namespace qaa
