#include "qaa/pgap.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qaa/path.hpp"

namespace qaa {

PerturbativeGap perturbative_gap(const ClassicalCostFunction& cost,
                                 const SpinConfiguration& config_a,
                                 const SpinConfiguration& config_b, double delta_lambda) {
    if (config_a.n != cost.n_spins() || config_b.n != cost.n_spins())
        throw std::invalid_argument("perturbative_gap: configuration size mismatch");
    if (!(delta_lambda > 0)) throw std::invalid_argument("perturbative_gap: need delta_lambda > 0");
    const std::uint32_t diff = config_a.bits ^ config_b.bits;
    const int d = std::popcount(diff);
    if (d == 0) throw std::invalid_argument("perturbative_gap: configurations are identical");
    if (d > 20) throw std::invalid_argument("perturbative_gap: Hamming distance above 20");

    std::vector<int> pos;
    for (int i = 0; i < cost.n_spins(); ++i)
        if (diff >> i & 1u) pos.push_back(i);

    const double e_a = cost.energy(config_a.bits);
    const double res_tol = 1e-12 * std::max(1.0, std::abs(e_a));
    const std::uint32_t full = (1u << d) - 1u;

    // value[S] = best chain product including the factor for intermediate a^S;
    // subsets of the flipped-bit index set, visited in increasing mask order so
    // every S \ {i} is already final
    std::vector<double> value(std::size_t{1} << d, 0.0);
    value[0] = 1.0;
    for (std::uint32_t s = 1; s < full; ++s) {
        std::uint32_t mid_bits = config_a.bits;
        for (int i = 0; i < d; ++i)
            if (s >> i & 1u) mid_bits ^= (1u << pos[static_cast<std::size_t>(i)]);
        const double den = std::abs(e_a - cost.energy(mid_bits));
        if (den < res_tol)
            throw ResonanceError("perturbative_gap: intermediate configuration resonant with endpoint",
                                 config_a, SpinConfiguration{mid_bits, cost.n_spins()});
        double best_prev = 0.0;
        for (int i = 0; i < d; ++i)
            if (s >> i & 1u) best_prev = std::max(best_prev, value[s & ~(1u << i)]);
        value[s] = best_prev / den;
    }
    double best_chain = 0.0;
    for (int i = 0; i < d; ++i) best_chain = std::max(best_chain, value[full & ~(1u << i)]);

    PerturbativeGap out;
    out.estimate = std::pow(delta_lambda, d) * best_chain;
    out.hamming_d = d;
    if (cost.n_spins() <= 14) out.exact = probed_gap_exact(cost, delta_lambda);
    return out;
}

double probed_gap_exact(const ClassicalCostFunction& cost, double delta_lambda,
                        const SolverOptions& solver) {
    KLocalOperator h = cost.to_operator();
    h.add_scaled(transverse_field_driver(cost.n_spins()), delta_lambda);
    const SpectrumSlice s = lowest_k(h, 2, solver, false);
    return s.energies[1] - s.energies[0];
}

}  // namespace qaa
