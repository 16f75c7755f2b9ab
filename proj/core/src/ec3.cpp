#include "qaa/ec3.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qaa/rng.hpp"

namespace qaa {

bool EC3Instance::satisfiable() const {
    if (n_vars > 26) throw std::invalid_argument("EC3Instance::satisfiable: N > 26");
    const std::uint64_t dim = std::uint64_t{1} << n_vars;
    for (std::uint64_t x = 0; x < dim; ++x)
        if (satisfied_by(static_cast<std::uint32_t>(x))) return true;
    return false;
}

EC3Instance random_ec3(int n_vars, double alpha, std::uint64_t seed) {
    if (n_vars < 3) throw std::invalid_argument("random_ec3: need n_vars >= 3");
    if (!(alpha > 0)) throw std::invalid_argument("random_ec3: need alpha > 0");
    const std::uint64_t m = static_cast<std::uint64_t>(std::llround(alpha * n_vars));
    const std::uint64_t total = static_cast<std::uint64_t>(n_vars) * (n_vars - 1) * (n_vars - 2) / 6;
    if (m > total) throw std::invalid_argument("random_ec3: round(alpha*N) exceeds C(N,3)");

    std::vector<std::array<int, 3>> pool;
    pool.reserve(total);
    for (int i = 0; i < n_vars; ++i)
        for (int j = i + 1; j < n_vars; ++j)
            for (int k = j + 1; k < n_vars; ++k) pool.push_back({i, j, k});

    // partial Fisher-Yates: first m slots are a uniform sample without replacement
    Rng rng(seed);
    for (std::uint64_t a = 0; a < m; ++a) {
        const std::uint64_t b = a + rng.uniform_int(total - a);
        std::swap(pool[a], pool[b]);
    }

    EC3Instance inst;
    inst.n_vars = n_vars;
    inst.seed = seed;
    inst.clauses.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(m));
    std::sort(inst.clauses.begin(), inst.clauses.end());
    return inst;
}

void save_ec3(const EC3Instance& inst, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("save_ec3: cannot open " + path);
    f << inst.n_vars << ' ' << inst.clauses.size() << ' ' << inst.seed << '\n';
    for (const auto& c : inst.clauses) f << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
    if (!f) throw std::runtime_error("save_ec3: write failed for " + path);
}

EC3Instance load_ec3(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_ec3: cannot open " + path);
    EC3Instance inst;
    std::size_t m = 0;
    if (!(f >> inst.n_vars >> m >> inst.seed))
        throw std::runtime_error("load_ec3: malformed header in " + path);
    if (inst.n_vars < 3) throw std::runtime_error("load_ec3: bad variable count in " + path);
    inst.clauses.resize(m);
    for (std::size_t a = 0; a < m; ++a) {
        auto& c = inst.clauses[a];
        if (!(f >> c[0] >> c[1] >> c[2]))
            throw std::runtime_error("load_ec3: truncated clause list in " + path);
        if (c[0] < 0 || c[0] >= c[1] || c[1] >= c[2] || c[2] >= inst.n_vars)
            throw std::runtime_error("load_ec3: clause not a sorted distinct triple in " + path);
    }
    return inst;
}

Ec3Cost ec3_to_cost(const EC3Instance& inst) {
    // per clause, with sigma = 2x-1:  (x_i+x_j+x_k-1)^2 = 1 + (s_i+s_j+s_k)/2
    //                                 + (s_i s_j + s_i s_k + s_j s_k)/2
    Ec3Cost out{ClassicalCostFunction(inst.n_vars), 0.0};
    for (const auto& c : inst.clauses) {
        out.constant += 1.0;
        for (int v : c) out.cost.add_field(v, -0.5);
        out.cost.add_coupling({c[0], c[1]}, -0.5);
        out.cost.add_coupling({c[0], c[2]}, -0.5);
        out.cost.add_coupling({c[1], c[2]}, -0.5);
    }
    return out;
}

}  // namespace qaa
