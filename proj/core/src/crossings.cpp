#include "qaa/crossings.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qaa {

namespace {

// golden-section minimization of the pair gap; returns (param, gap) of the best
// probe, never worse than the bracket midpoint it started from
std::pair<double, double> refine_pair_gap(const OperatorFamily& family, int k, int lo_level,
                                          int hi_level, double lo, double mid, double hi,
                                          double mid_gap, const SolverOptions& solver) {
    auto pair_gap = [&](double p) {
        const SpectrumSlice s = lowest_k(family.at(p), k, solver, false);
        return s.energies[static_cast<std::size_t>(hi_level)] -
               s.energies[static_cast<std::size_t>(lo_level)];
    };
    double best_p = mid, best_g = mid_gap;
    const double invgr = (std::sqrt(5.0) - 1.0) / 2.0;
    // driven to machine resolution: an exact crossing has a V-shaped pair gap
    // whose floor is only reached when the bracket itself collapses, and the
    // exactness flag downstream depends on getting there
    const double tol = 1e-12;
    double x1 = hi - invgr * (hi - lo), x2 = lo + invgr * (hi - lo);
    double f1 = pair_gap(x1), f2 = pair_gap(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invgr * (hi - lo);
            f1 = pair_gap(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invgr * (hi - lo);
            f2 = pair_gap(x2);
        }
        if (f1 < best_g) best_g = f1, best_p = x1;
        if (f2 < best_g) best_g = f2, best_p = x2;
    }
    return {best_p, best_g};
}

}  // namespace

CrossingThresholds default_crossing_thresholds(int n_spins) {
    if (n_spins < 2) throw std::invalid_argument("default_crossing_thresholds: need n >= 2");
    return {std::pow(static_cast<double>(n_spins), -0.125),
            1.0 / std::log(static_cast<double>(n_spins))};
}

std::string classify_crossing_param(double param, const CrossingThresholds& thresholds) {
    if (param <= thresholds.lambda_cr) return "in-phase";
    if (param <= thresholds.lambda_star) return "perturbative-endpoint";
    return "transition-adjacent";
}

std::vector<CrossingReport> detect_crossings(const OperatorFamily& family,
                                             const GapProfile& profile,
                                             const std::vector<std::pair<int, int>>& level_pairs,
                                             double gap_threshold,
                                             const CrossingThresholds& thresholds,
                                             const SolverOptions& solver) {
    const std::size_t npts = profile.grid.size();
    if (npts < 3) throw std::invalid_argument("detect_crossings: need at least 3 grid points");
    for (const auto& [a, b] : level_pairs)
        if (a < 0 || b <= a || b >= profile.k)
            throw std::invalid_argument("detect_crossings: level pair outside the solved window");
    CrossingThresholds thr = thresholds;
    if (thr.lambda_star == 0.0 && thr.lambda_cr == 0.0 && family.n_spins >= 2)
        thr = default_crossing_thresholds(family.n_spins);

    std::vector<CrossingReport> reports;
    for (const auto& [a, b] : level_pairs) {
        auto grid_gap = [&](std::size_t i) {
            return profile.slices[i].energies[static_cast<std::size_t>(b)] -
                   profile.slices[i].energies[static_cast<std::size_t>(a)];
        };
        for (std::size_t i = 1; i + 1 < npts; ++i) {
            if (profile.grid[i].failed || profile.grid[i - 1].failed || profile.grid[i + 1].failed)
                continue;
            const double g = grid_gap(i);
            // strict on the left so a flat run reports once, at its left edge
            if (!(g < gap_threshold && g <= grid_gap(i + 1) && g < grid_gap(i - 1))) continue;

            CrossingReport r;
            r.level_lower = a;
            r.level_upper = b;
            r.param_star = profile.grid[i].param;
            r.gap_star = g;
            try {
                const auto [p_star, g_star] = refine_pair_gap(
                    family, profile.k, a, b, profile.grid[i - 1].param, profile.grid[i].param,
                    profile.grid[i + 1].param, g, solver);
                r.param_star = p_star;
                r.gap_star = g_star;
            } catch (const SolverFailure&) {
                // keep the unrefined grid minimum
            }
            r.exact = r.gap_star < 1e-10 * family.at(r.param_star).coeff_l1_norm();

            // label each branch on whichever adjacent grid point gives the
            // cleaner (higher-majority) classical label
            auto branch_label = [&](int level) {
                const auto& vl = profile.slices[i - 1].eigenvectors;
                const auto& vr = profile.slices[i + 1].eigenvectors;
                if (vl.empty() || vr.empty())
                    throw std::invalid_argument(
                        "detect_crossings: profile was swept without keep_vectors");
                const StateLabel left = label_state(vl[static_cast<std::size_t>(level)],
                                                    family.n_spins);
                const StateLabel right = label_state(vr[static_cast<std::size_t>(level)],
                                                     family.n_spins);
                return left.weight >= right.weight ? left : right;
            };
            const StateLabel lower = branch_label(a);
            const StateLabel upper = branch_label(b);
            r.config_lower = lower.config;
            r.config_upper = upper.config;
            r.weight_lower = lower.weight;
            r.weight_upper = upper.weight;
            r.delocalized = lower.weight < 0.5 || upper.weight < 0.5;
            r.hamming_d = hamming(lower.config, upper.config);
            r.classification = classify_crossing_param(r.param_star, thr);
            reports.push_back(std::move(r));
        }
    }
    std::sort(reports.begin(), reports.end(), [](const CrossingReport& x, const CrossingReport& y) {
        if (x.param_star != y.param_star) return x.param_star < y.param_star;
        if (x.level_lower != y.level_lower) return x.level_lower < y.level_lower;
        return x.level_upper < y.level_upper;
    });
    return reports;
}

}  // namespace qaa
