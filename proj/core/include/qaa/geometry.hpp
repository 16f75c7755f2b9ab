#pragma once

#include <cstdint>
#include <vector>

#include "qaa/cost.hpp"
#include "qaa/ec3.hpp"

namespace qaa {

struct GroundStateGeometry {
    int n_spins = 0;
    double ground_energy = 0.0;
    std::vector<std::uint32_t> manifold;          // every minimum-energy configuration, ascending
    int max_distance = 0;                         // max pairwise Hamming distance
    int n_clusters = 0;                           // components under single-spin-flip moves
    std::vector<std::int64_t> distance_histogram; // pairwise distance counts, index 0..N
};

// Exhaustive enumeration of the ground manifold (N <= 26) with pairwise Hamming
// statistics and single-flip cluster count.  Rejects manifolds above 65536
// configurations: the pairwise stage is quadratic and a manifold that large
// signals a near-trivial cost function, not an instance worth surveying.
GroundStateGeometry ground_state_geometry(const ClassicalCostFunction& cost);

struct SatThresholdPoint {
    double alpha = 0.0;
    int n_instances = 0;
    int n_sat = 0;
    double p_sat = 0.0;
    double stderr_p = 0.0;  // binomial standard error sqrt(p(1-p)/n)
    double mean_max_distance_over_n = 0.0;
};

// Monte-Carlo satisfiable fraction of random EC3 ensembles per clause density,
// instance seeds derived as derive_seed(seed, alpha_index * n_instances + i).
// with_geometry additionally averages max_distance/N of each instance's
// minimum-energy manifold (satisfiable or not); turn it off for densities far
// from the threshold where the manifold is huge and only P_sat is wanted.
std::vector<SatThresholdPoint> ec3_sat_threshold(int n_vars, const std::vector<double>& alphas,
                                                 int n_instances, std::uint64_t seed,
                                                 bool with_geometry = true, int n_threads = 1);

}  // namespace qaa
