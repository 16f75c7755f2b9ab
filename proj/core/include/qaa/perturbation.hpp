#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qaa/cost.hpp"
#include "qaa/spin.hpp"

namespace qaa {

// Even-order Rayleigh-Schrodinger energy series about a classical configuration
// for H = H_cost + lambda * sum_i X_i:
//   E(lambda) = E^(0) + sum_{m>=1} lambda^(2m) F^(m)
// (odd orders vanish because the driver flips exactly one spin).
struct PerturbationSeries {
    SpinConfiguration config;
    int order = 0;                // highest m
    std::vector<double> coeffs;   // [E^(0), F^(1), ..., F^(order)]

    double evaluate(double lambda) const {
        const double l2 = lambda * lambda;
        double v = 0.0;
        for (std::size_t m = coeffs.size(); m-- > 0;) v = v * l2 + coeffs[m];
        return v;
    }
};

class ResonanceError : public std::runtime_error {
public:
    ResonanceError(const std::string& what, SpinConfiguration a, SpinConfiguration b)
        : std::runtime_error(what), config_a(a), config_b(b) {}
    SpinConfiguration config_a, config_b;
};

// Standard recursive scheme with intermediate normalization, restricted to the
// Hamming ball the driver can reach at the requested order.  Throws
// ResonanceError when a reachable configuration is (near-)degenerate with
// `config`, naming the resonant pair.
PerturbationSeries rs_perturbation(const ClassicalCostFunction& cost,
                                   const SpinConfiguration& config, int order,
                                   double resonance_tol = 1e-9);

// Smallest positive root lambda <= lambda_max of E_a(lambda) - E_b(lambda) for two
// truncated series; nullopt when the difference has no sign change in range.
std::optional<double> crossing_location_estimate(const PerturbationSeries& a,
                                                 const PerturbationSeries& b,
                                                 double lambda_max);

}  // namespace qaa
