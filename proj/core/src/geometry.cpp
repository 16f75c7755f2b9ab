#include "qaa/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "qaa/parallel.hpp"
#include "qaa/rng.hpp"

namespace qaa {

namespace {

int find_root(std::vector<int>& parent, int i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
        parent[static_cast<std::size_t>(i)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
        i = parent[static_cast<std::size_t>(i)];
    }
    return i;
}

}  // namespace

GroundStateGeometry ground_state_geometry(const ClassicalCostFunction& cost) {
    const int n = cost.n_spins();
    if (n < 1 || n > 26)
        throw std::invalid_argument("ground_state_geometry: N must be in [1, 26] (exhaustive scan)");

    // flat copy of the terms; map node chasing dominates otherwise
    std::vector<std::pair<std::uint32_t, double>> terms(cost.couplings().begin(),
                                                        cost.couplings().end());
    const double constant = cost.constant();
    auto energy = [&](std::uint32_t b) {
        double e = constant;
        for (const auto& [mask, j] : terms)
            e -= (std::popcount(mask & ~b) & 1) ? -j : j;
        return e;
    };

    const std::uint64_t dim = std::uint64_t{1} << n;
    double e0 = energy(0);
    for (std::uint64_t b = 1; b < dim; ++b)
        e0 = std::min(e0, energy(static_cast<std::uint32_t>(b)));
    const double tol = 1e-9 * std::max(1.0, std::abs(e0));

    GroundStateGeometry g;
    g.n_spins = n;
    g.ground_energy = e0;
    for (std::uint64_t b = 0; b < dim; ++b)
        if (energy(static_cast<std::uint32_t>(b)) <= e0 + tol)
            g.manifold.push_back(static_cast<std::uint32_t>(b));
    const std::size_t k = g.manifold.size();
    if (k > 65536)
        throw std::invalid_argument(
            "ground_state_geometry: ground manifold exceeds 65536 configurations; "
            "the quadratic pairwise stage is out of budget for this instance");

    g.distance_histogram.assign(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const int d = std::popcount(g.manifold[i] ^ g.manifold[j]);
            ++g.distance_histogram[static_cast<std::size_t>(d)];
            g.max_distance = std::max(g.max_distance, d);
        }

    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < k; ++i)
        for (int s = 0; s < n; ++s) {
            const std::uint32_t nb = g.manifold[i] ^ (1u << s);
            const auto it = std::lower_bound(g.manifold.begin(), g.manifold.end(), nb);
            if (it != g.manifold.end() && *it == nb) {
                const int a = find_root(parent, static_cast<int>(i));
                const int b = find_root(parent, static_cast<int>(it - g.manifold.begin()));
                if (a != b) parent[static_cast<std::size_t>(a)] = b;
            }
        }
    for (std::size_t i = 0; i < k; ++i)
        if (find_root(parent, static_cast<int>(i)) == static_cast<int>(i)) ++g.n_clusters;
    return g;
}

std::vector<SatThresholdPoint> ec3_sat_threshold(int n_vars, const std::vector<double>& alphas,
                                                 int n_instances, std::uint64_t seed,
                                                 bool with_geometry, int n_threads) {
    if (n_vars < 3 || n_vars > 26)
        throw std::invalid_argument("ec3_sat_threshold: n_vars must be in [3, 26]");
    if (n_instances < 1) throw std::invalid_argument("ec3_sat_threshold: need instances");

    std::vector<SatThresholdPoint> table(alphas.size());
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        SatThresholdPoint& pt = table[ai];
        pt.alpha = alphas[ai];
        pt.n_instances = n_instances;
        std::vector<char> sat(static_cast<std::size_t>(n_instances), 0);
        std::vector<double> dist(static_cast<std::size_t>(n_instances), 0.0);
        parallel_for_index(static_cast<std::size_t>(n_instances), n_threads, [&](std::size_t i) {
            const std::uint64_t s =
                derive_seed(seed, static_cast<std::uint64_t>(ai) *
                                      static_cast<std::uint64_t>(n_instances) + i);
            const EC3Instance inst = random_ec3(n_vars, alphas[ai], s);
            if (with_geometry) {
                const Ec3Cost ec = ec3_to_cost(inst);
                const GroundStateGeometry g = ground_state_geometry(ec.cost);
                // cost of EC3 is integer-valued with minimum 0 iff satisfiable
                sat[i] = (g.ground_energy + ec.constant) < 0.5 ? 1 : 0;
                dist[i] = static_cast<double>(g.max_distance) / n_vars;
            } else {
                sat[i] = inst.satisfiable() ? 1 : 0;
            }
        });
        for (int i = 0; i < n_instances; ++i) {
            pt.n_sat += sat[static_cast<std::size_t>(i)];
            pt.mean_max_distance_over_n += dist[static_cast<std::size_t>(i)];
        }
        pt.p_sat = static_cast<double>(pt.n_sat) / n_instances;
        pt.stderr_p = std::sqrt(pt.p_sat * (1.0 - pt.p_sat) / n_instances);
        pt.mean_max_distance_over_n /= n_instances;
    }
    return table;
}

}  // namespace qaa
