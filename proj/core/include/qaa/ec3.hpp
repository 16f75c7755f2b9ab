#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qaa/cost.hpp"

namespace qaa {

// Exact-cover-3 instance: M clauses over N boolean variables, each clause a sorted
// triple of distinct variables demanding exactly one true among the three.
// E_C(x) = sum_clauses (x_i + x_j + x_k - 1)^2; satisfiable iff min E_C = 0.
struct EC3Instance {
    int n_vars = 0;
    std::uint64_t seed = 0;  // provenance; 0 for hand-built instances
    std::vector<std::array<int, 3>> clauses;

    double alpha() const {
        return n_vars ? static_cast<double>(clauses.size()) / n_vars : 0.0;
    }
    int clause_energy(std::size_t a, std::uint32_t x) const {
        const int t = static_cast<int>((x >> clauses[a][0]) & 1u) +
                      static_cast<int>((x >> clauses[a][1]) & 1u) +
                      static_cast<int>((x >> clauses[a][2]) & 1u) - 1;
        return t * t;
    }
    int cost(std::uint32_t x) const {
        int e = 0;
        for (std::size_t a = 0; a < clauses.size(); ++a) e += clause_energy(a, x);
        return e;
    }
    bool satisfied_by(std::uint32_t x) const {
        for (std::size_t a = 0; a < clauses.size(); ++a)
            if (clause_energy(a, x) != 0) return false;
        return true;
    }
    bool satisfiable() const;  // exhaustive; N <= 26
};

// M = round(alpha*N) clauses sampled uniformly without replacement from all
// C(N,3) distinct triples; clause list sorted lexicographically.
EC3Instance random_ec3(int n_vars, double alpha, std::uint64_t seed);

// text format: line 1 "N M seed", then M lines "i j k" (0-based, sorted)
void save_ec3(const EC3Instance& inst, const std::string& path);
EC3Instance load_ec3(const std::string& path);

// +-1 spin image of E_C with sigma_i = 2 x_i - 1.  cost.energy(sigma) + constant
// equals E_C(x) exactly (all coefficients are halves, exact in doubles).
struct Ec3Cost {
    ClassicalCostFunction cost;
    double constant = 0.0;  // equals the clause count M
};
Ec3Cost ec3_to_cost(const EC3Instance& inst);

}  // namespace qaa
