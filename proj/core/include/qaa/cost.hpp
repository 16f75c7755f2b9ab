#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qaa/operators.hpp"
#include "qaa/spin.hpp"

namespace qaa {

// Diagonal classical energy E(sigma) = constant - sum_S J_S prod_{i in S} sigma_i,
// sigma_i in {+1,-1}; S ranges over singletons (fields h_i) and larger subsets.
// Terms are keyed by site mask and accumulate, so construction order is irrelevant.
class ClassicalCostFunction {
public:
    ClassicalCostFunction() = default;
    explicit ClassicalCostFunction(int n_spins);

    int n_spins() const { return n_; }
    double constant() const { return constant_; }

    void add_constant(double c) { constant_ += c; }
    void add_field(int i, double h);                            // J_{i} += h
    void add_coupling(const std::vector<int>& sites, double j); // |sites| >= 2
    void add_coupling_mask(std::uint32_t mask, double j);

    double field(int i) const;
    double pair_coupling(int i, int j) const;
    const std::map<std::uint32_t, double>& couplings() const { return terms_; }

    double energy(std::uint32_t config) const;
    double energy(const SpinConfiguration& c) const { return energy(c.bits); }

    // all-Z operator image (constant included as an identity term)
    KLocalOperator to_operator() const;

    // configuration minimizing energy(); ties resolved to the smallest index
    std::uint32_t argmin_energy() const;

private:
    int n_ = 0;
    double constant_ = 0.0;
    std::map<std::uint32_t, double> terms_;  // mask -> J_S
};

}  // namespace qaa
