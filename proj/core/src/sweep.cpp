#include "qaa/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qaa/parallel.hpp"

namespace qaa {

namespace {

double degeneracy_scale(const KLocalOperator& h) { return 1e-10 * h.coeff_l1_norm(); }

double gap_of(const SpectrumSlice& s) { return s.energies.at(1) - s.energies.at(0); }

}  // namespace

GapProfile gap_sweep(const OperatorFamily& family, const std::vector<double>& grid, int k,
                     const SolverOptions& solver, const SweepOptions& sweep) {
    if (k < 2) throw std::invalid_argument("gap_sweep: need k >= 2 to form a gap");
    if (grid.empty()) throw std::invalid_argument("gap_sweep: empty grid");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("gap_sweep: grid must be sorted");
    if (sweep.compute_v10 && !family.derivative)
        throw std::invalid_argument("gap_sweep: v10 requested but family has no derivative");

    GapProfile p;
    p.k = k;
    p.grid.resize(grid.size());
    p.slices.resize(grid.size());

    parallel_for_index(grid.size(), sweep.n_threads, [&](std::size_t i) {
        GapPoint& pt = p.grid[i];
        pt.param = grid[i];
        const KLocalOperator h = family.at(grid[i]);
        try {
            SpectrumSlice s = lowest_k(h, k, solver, sweep.keep_vectors || sweep.compute_v10);
            s.param = grid[i];
            pt.gap = s.energies[1] - s.energies[0];
            pt.degenerate = pt.gap < degeneracy_scale(h);
            if (sweep.compute_v10) {
                const MatrixElementV10 m = matrix_element_v10(family, grid[i], s);
                pt.v10 = m.value;
                pt.v10_valid = true;
            }
            if (!sweep.keep_vectors) s.eigenvectors.clear();
            p.slices[i] = std::move(s);
        } catch (const SolverFailure& f) {
            pt.failed = true;
            pt.error = f.what();
        }
    });

    for (const GapPoint& pt : p.grid) p.any_failure |= pt.failed;

    // grid argmin over successful points
    p.min_index = -1;
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        if (p.grid[i].failed) continue;
        if (p.min_index < 0 || p.grid[i].gap < p.grid[static_cast<std::size_t>(p.min_index)].gap)
            p.min_index = static_cast<int>(i);
    }
    if (p.min_index >= 0) {
        p.min_param = p.grid[static_cast<std::size_t>(p.min_index)].param;
        p.min_gap = p.grid[static_cast<std::size_t>(p.min_index)].gap;
    }

    // greedy maximal-overlap matching of levels between adjacent points;
    // ties broken by energy order (row-major scan)
    if (sweep.keep_vectors) {
        p.tracking.assign(grid.size(), std::vector<int>(static_cast<std::size_t>(k)));
        std::vector<int> prev(static_cast<std::size_t>(k));
        for (int l = 0; l < k; ++l) prev[static_cast<std::size_t>(l)] = l;
        p.tracking[0] = prev;
        for (std::size_t i = 1; i < grid.size(); ++i) {
            if (p.grid[i].failed || p.grid[i - 1].failed ||
                p.slices[i].eigenvectors.empty() || p.slices[i - 1].eigenvectors.empty()) {
                for (int l = 0; l < k; ++l) p.tracking[i][static_cast<std::size_t>(l)] = l;
                prev = p.tracking[i];
                continue;
            }
            Eigen::MatrixXd overlap(k, k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b)
                    overlap(a, b) = std::abs(p.slices[i - 1].eigenvectors[static_cast<std::size_t>(a)]
                                                 .dot(p.slices[i].eigenvectors[static_cast<std::size_t>(b)]));
            std::vector<int> match(static_cast<std::size_t>(k), -1);
            std::vector<bool> row_used(static_cast<std::size_t>(k), false),
                col_used(static_cast<std::size_t>(k), false);
            for (int pick = 0; pick < k; ++pick) {
                int br = -1, bc = -1;
                double best = -1.0;
                for (int a = 0; a < k; ++a) {
                    if (row_used[static_cast<std::size_t>(a)]) continue;
                    for (int b = 0; b < k; ++b) {
                        if (col_used[static_cast<std::size_t>(b)]) continue;
                        if (overlap(a, b) > best) {
                            best = overlap(a, b);
                            br = a;
                            bc = b;
                        }
                    }
                }
                row_used[static_cast<std::size_t>(br)] = true;
                col_used[static_cast<std::size_t>(bc)] = true;
                match[static_cast<std::size_t>(br)] = bc;
            }
            for (int l = 0; l < k; ++l)
                p.tracking[i][static_cast<std::size_t>(l)] =
                    match[static_cast<std::size_t>(prev[static_cast<std::size_t>(l)])];
            prev = p.tracking[i];
        }
    }

    return p;
}

RefinedMin refine_min_gap(const OperatorFamily& family, double lo, double mid, double hi,
                          int k, double tol_param, const SolverOptions& solver) {
    if (!(lo < mid && mid < hi))
        throw std::invalid_argument("refine_min_gap: bracket must satisfy lo < mid < hi");
    const int kk = std::max(k, 2);
    auto eval = [&](double x) {
        SpectrumSlice s = lowest_k(family.at(x), kk, solver, true);
        s.param = x;
        return s;
    };
    SpectrumSlice sl = eval(lo), sm = eval(mid), sh = eval(hi);
    if (!(gap_of(sm) < gap_of(sl) && gap_of(sm) < gap_of(sh)))
        throw std::invalid_argument("refine_min_gap: bracket does not contain an interior minimum");

    // golden-section, keeping the best interior slice
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    SpectrumSlice s1 = eval(x1), s2 = eval(x2);
    while (b - a > tol_param) {
        if (gap_of(s1) <= gap_of(s2)) {
            b = x2;
            x2 = x1;
            s2 = std::move(s1);
            x1 = b - phi * (b - a);
            s1 = eval(x1);
        } else {
            a = x1;
            x1 = x2;
            s1 = std::move(s2);
            x2 = a + phi * (b - a);
            s2 = eval(x2);
        }
    }
    const SpectrumSlice& best = gap_of(s1) <= gap_of(s2) ? s1 : s2;
    RefinedMin out;
    out.param = best.param;
    out.gap = gap_of(best);
    out.slice = best;
    // the refined value can only improve on the bracket mid point
    if (gap_of(sm) < out.gap) {
        out.param = mid;
        out.gap = gap_of(sm);
        out.slice = sm;
    }
    return out;
}

bool refine_profile_min(const OperatorFamily& family, GapProfile& profile, double tol_param,
                        const SolverOptions& solver) {
    const int i = profile.min_index;
    if (i <= 0 || i + 1 >= static_cast<int>(profile.grid.size())) return false;
    const auto& g = profile.grid;
    const std::size_t u = static_cast<std::size_t>(i);
    if (g[u - 1].failed || g[u].failed || g[u + 1].failed) return false;
    if (!(g[u].gap < g[u - 1].gap && g[u].gap < g[u + 1].gap)) return false;
    const RefinedMin r = refine_min_gap(family, g[u - 1].param, g[u].param, g[u + 1].param,
                                        profile.k, tol_param, solver);
    profile.min_param = r.param;
    profile.min_gap = r.gap;
    profile.refined = true;
    return true;
}

MatrixElementV10 matrix_element_v10(const OperatorFamily& family, double param,
                                    const SpectrumSlice& slice) {
    if (!family.derivative)
        throw std::invalid_argument("matrix_element_v10: family has no derivative");
    if (slice.eigenvectors.size() < 2)
        throw std::invalid_argument("matrix_element_v10: need the two lowest eigenvectors");
    const KLocalOperator dh = family.derivative(param);
    const Eigen::VectorXd dv0 = dh.apply(slice.eigenvectors[0]);
    MatrixElementV10 out;
    out.value = std::abs(slice.eigenvectors[1].dot(dv0));
    out.degenerate =
        (slice.energies[1] - slice.energies[0]) < degeneracy_scale(family.at(param));
    return out;
}

double adiabatic_time_bound(const GapProfile& profile) {
    double bound = 0.0;
    for (const GapPoint& pt : profile.grid) {
        if (pt.failed || !pt.v10_valid)
            throw std::invalid_argument("adiabatic_time_bound: profile lacks v10 at some point");
        if (pt.degenerate || pt.gap <= 0.0) return std::numeric_limits<double>::infinity();
        bound = std::max(bound, pt.v10 / (pt.gap * pt.gap));
    }
    return bound;
}

}  // namespace qaa
