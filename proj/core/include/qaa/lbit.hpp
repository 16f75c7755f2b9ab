#pragma once

#include <cstdint>
#include <vector>

#include "qaa/cost.hpp"
#include "qaa/operators.hpp"
#include "qaa/path.hpp"
#include "qaa/spin.hpp"

namespace qaa {

// Effective localized-bit Hamiltonian: diagonal in tau^z at every lambda,
//   H(lambda) = -sum_i h_i(lambda) Z_i - sum_{i<j} J_ij(lambda) Z_i Z_j,
// with each coefficient a polynomial sum_m c_m lambda^m.  At lambda = 0 the
// coefficients are integers; pair couplings decay exponentially with index
// distance (locality length xi).
struct LBitParams {
    int int_range_lo = -1;      // lambda=0 integer draws, inclusive range
    int int_range_hi = 1;
    int series_order = 6;       // highest lambda power
    double series_decay = 0.9;  // scale r^m on the m-th series coefficient
    double series_amp = 2.0;    // uniform amplitude of series draws
    double decay_xi = 2.0;      // locality length for pair couplings
};

struct LBitPairSeries {
    int i = 0, j = 0;
    std::vector<double> coeffs;  // c_0..c_order
};

struct LBitModel {
    int n_spins = 0;
    LBitParams params;
    std::vector<std::vector<double>> field_series;  // [site][m]
    std::vector<LBitPairSeries> pair_series;        // all i<j, lexicographic
};

// Draw order is fixed (fields site-major then pairs lexicographic, series index
// inner), so a seed pins the model exactly.  lambda=0 pair couplings are integer
// only at distance 1 and zero beyond; series terms carry the e^{-dist/xi} factor.
LBitModel sample_lbit_model(int n_spins, std::uint64_t seed, const LBitParams& params = {});

double lbit_field_at(const LBitModel& m, int i, double lambda);
double lbit_pair_at(const LBitModel& m, std::size_t pair_index, double lambda);

// all-Z operator at fixed lambda
KLocalOperator evaluate_lbit(const LBitModel& m, double lambda);
// same model as a classical cost function (for perturbative-gap evaluation)
ClassicalCostFunction lbit_cost_at(const LBitModel& m, double lambda);

// Exact ground-level crossing of the commuting family: lambda where the identity
// of the minimum-energy configuration changes.
struct LBitCrossing {
    double lambda = 0.0;
    SpinConfiguration lower_before;  // ground configuration just below lambda
    SpinConfiguration lower_after;   // ground configuration just above lambda
    int hamming_d = 0;
};

// Scans argmin of the diagonal energies over a lambda grid and bisects each
// argmin change down to the crossing point.
std::vector<LBitCrossing> find_ground_crossings(const LBitModel& m, double lambda_lo,
                                                double lambda_hi, int n_grid);

// Sweep family H(lambda) = evaluate_lbit(lambda) + probe * sum_i X_i with the
// analytic lambda-derivative (the probe term drops out of it).  probe = 0 keeps
// the family commuting, so level crossings are exact; a small probe opens them
// into avoided crossings.
OperatorFamily lbit_lambda_family(const LBitModel& m, double probe = 0.0);

}  // namespace qaa
