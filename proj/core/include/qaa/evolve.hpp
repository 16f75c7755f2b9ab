#pragma once

#include <optional>
#include <vector>

#include "qaa/path.hpp"
#include "qaa/schedule.hpp"
#include "qaa/state.hpp"

namespace qaa {

struct EvolveOptions {
    double dt_max = 2.0;       // hard cap on the step size
    double tol = 1e-6;         // accuracy budget for the whole run
    int krylov_dim_max = 40;   // Lanczos space per exponential
    int n_threads = 1;         // used by success_curve only
};

struct EvolutionResult {
    double total_time = 0.0;
    StateVector final_state;
    double success_probability = 0.0;  // summed over the target ground manifold
    double residual_energy = 0.0;      // <psi|H(1)|psi> - E0
    double norm_drift = 0.0;           // | ||psi(T)|| - 1 |
    long long steps = 0;
};

// Schrodinger evolution under H(s(t)) from the family (param = s in [0,1]).
// Fourth-order commutator-free Magnus steps, each a pair of Krylov-subspace
// exponentials of frozen operators, with step-doubling error control.
//
// initial: defaults to the analytic ground state of the transverse-field driver
// (valid when H(0) = sum_i X_i); pass an explicit state otherwise.
// The success target is the ground manifold of H(1): classical configurations of
// minimal diagonal energy when H(1) is diagonal, else the (degenerate) lowest
// eigenvectors from an exact solve.
EvolutionResult evolve(const OperatorFamily& family, const AnnealSchedule& schedule,
                       const EvolveOptions& opts = {},
                       const std::optional<StateVector>& initial = std::nullopt);

// Closed-form diabatic transition probability for the linear two-level sweep
// H(t) = a*(t/T - 1/2) Z + b X over [0, T]: exp(-pi b^2 T / a).
// (Difference of the diabatic slopes is 2a/T and the off-diagonal coupling is b,
// so the standard exponent -2*pi*coupling^2/slew evaluates to -pi b^2 T/a.)
double landau_zener_probability(double slope_a, double coupling_b, double total_time);

struct SuccessPoint {
    double total_time = 0.0;
    double success_probability = 0.0;
    double residual_energy = 0.0;
    double norm_drift = 0.0;
    bool monotone_break = false;  // success dipped below the previous T (reported, not enforced)
};

// One evolve per T (independent parallel tasks, merged in order).  The same
// initial state (or the driver-ground default) is used for every T.
std::vector<SuccessPoint> success_curve(const OperatorFamily& family,
                                        const std::vector<double>& t_values,
                                        const AnnealSchedule& shape = AnnealSchedule::linear(1.0),
                                        const EvolveOptions& opts = {},
                                        const std::optional<StateVector>& initial = std::nullopt);

}  // namespace qaa
