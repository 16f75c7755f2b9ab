#pragma once

#include <string>
#include <vector>

#include "qaa/eigensolve.hpp"
#include "qaa/path.hpp"

namespace qaa {

struct SweepOptions {
    bool keep_vectors = true;
    bool compute_v10 = true;  // needs family.derivative
    int n_threads = 1;
};

struct GapPoint {
    double param = 0.0;
    double gap = 0.0;
    double v10 = 0.0;
    bool v10_valid = false;
    bool degenerate = false;  // gap below the degeneracy scale of H(param)
    bool failed = false;
    std::string error;
};

struct GapProfile {
    int k = 0;
    std::vector<GapPoint> grid;
    std::vector<SpectrumSlice> slices;        // aligned with grid
    std::vector<std::vector<int>> tracking;   // tracked level -> energy index, per point
    int min_index = -1;                       // grid argmin of the gap
    double min_param = 0.0;                   // refined values once refine ran
    double min_gap = 0.0;
    bool refined = false;
    bool any_failure = false;
};

// Lowest-k spectrum per grid point (independent, parallelizable tasks), gap
// E1-E0, optional adiabatic matrix element |<1| dH/dparam |0>|, and greedy
// maximal-overlap level tracking between adjacent points.
GapProfile gap_sweep(const OperatorFamily& family, const std::vector<double>& grid, int k,
                     const SolverOptions& solver = {}, const SweepOptions& sweep = {});

struct RefinedMin {
    double param = 0.0;
    double gap = 0.0;
    SpectrumSlice slice;
};

// Golden-section refinement of a bracketed interior gap minimum
// (gap(mid) < gap(lo) and gap(mid) < gap(hi) required).
RefinedMin refine_min_gap(const OperatorFamily& family, double lo, double mid, double hi,
                          int k, double tol_param, const SolverOptions& solver = {});

// Refines the profile's grid minimum in place when it is interior; endpoint
// minima are left as-is.  Returns true when a refinement happened.
bool refine_profile_min(const OperatorFamily& family, GapProfile& profile, double tol_param,
                        const SolverOptions& solver = {});

struct MatrixElementV10 {
    double value = 0.0;
    bool degenerate = false;  // gap under 1e-10 * spectral-width estimate
};

// |<1| dH/dparam |0>| from the two lowest eigenvectors at `param`.
MatrixElementV10 matrix_element_v10(const OperatorFamily& family, double param,
                                    const SpectrumSlice& slice);

// max over the grid of |V10| / gap^2 (hbar = 1); explicit +inf when any grid
// point is degenerate or failed.
double adiabatic_time_bound(const GapProfile& profile);

}  // namespace qaa
