#include "qaa/cost.hpp"

#include <bit>
#include <stdexcept>

namespace qaa {

ClassicalCostFunction::ClassicalCostFunction(int n_spins) : n_(n_spins) {
    if (n_spins < 1 || n_spins > 26)
        throw std::invalid_argument("ClassicalCostFunction: n_spins must be in [1, 26]");
}

void ClassicalCostFunction::add_field(int i, double h) {
    if (i < 0 || i >= n_) throw std::invalid_argument("add_field: site out of range");
    terms_[1u << i] += h;
}

void ClassicalCostFunction::add_coupling(const std::vector<int>& sites, double j) {
    if (sites.size() < 2) throw std::invalid_argument("add_coupling: need at least two sites");
    std::uint32_t mask = 0;
    for (int s : sites) {
        if (s < 0 || s >= n_) throw std::invalid_argument("add_coupling: site out of range");
        const std::uint32_t bit = 1u << s;
        if (mask & bit) throw std::invalid_argument("add_coupling: duplicate site");
        mask |= bit;
    }
    terms_[mask] += j;
}

void ClassicalCostFunction::add_coupling_mask(std::uint32_t mask, double j) {
    const std::uint32_t all = (1u << n_) - 1u;
    if (mask == 0 || (mask & ~all)) throw std::invalid_argument("add_coupling_mask: bad mask");
    terms_[mask] += j;
}

double ClassicalCostFunction::field(int i) const {
    const auto it = terms_.find(1u << i);
    return it == terms_.end() ? 0.0 : it->second;
}

double ClassicalCostFunction::pair_coupling(int i, int j) const {
    const auto it = terms_.find((1u << i) | (1u << j));
    return it == terms_.end() ? 0.0 : it->second;
}

double ClassicalCostFunction::energy(std::uint32_t config) const {
    double e = constant_;
    for (const auto& [mask, j] : terms_)
        e -= (std::popcount(mask & ~config) & 1) ? -j : j;
    return e;
}

KLocalOperator ClassicalCostFunction::to_operator() const {
    KLocalOperator h(n_);
    if (constant_ != 0.0) h.add_constant(constant_);
    for (const auto& [mask, j] : terms_)
        if (j != 0.0) h.add_term(mask, 0u, -j);
    return h;
}

std::uint32_t ClassicalCostFunction::argmin_energy() const {
    const std::uint64_t dim = std::uint64_t{1} << n_;
    std::uint32_t best = 0;
    double best_e = energy(0u);
    for (std::uint64_t b = 1; b < dim; ++b) {
        const double e = energy(static_cast<std::uint32_t>(b));
        if (e < best_e) {
            best_e = e;
            best = static_cast<std::uint32_t>(b);
        }
    }
    return best;
}

}  // namespace qaa
