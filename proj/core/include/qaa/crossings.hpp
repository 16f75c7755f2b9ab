#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qaa/labels.hpp"
#include "qaa/path.hpp"
#include "qaa/sweep.hpp"

namespace qaa {

// Report-annotation thresholds for placing a crossing on the annealing axis.
// These are commentary, not assertions: the phase-boundary estimate itself is
// contested, so reports carry the classification but nothing is enforced on it.
struct CrossingThresholds {
    double lambda_star = 0.0;  // perturbative-endpoint window edge, default N^(-1/8)
    double lambda_cr = 0.0;    // localization boundary estimate, default 1/ln N
};

CrossingThresholds default_crossing_thresholds(int n_spins);

// param <= lambda_cr -> "in-phase"; param <= lambda_star -> "perturbative-endpoint";
// else "transition-adjacent"
std::string classify_crossing_param(double param, const CrossingThresholds& thresholds);

struct CrossingReport {
    double param_star = 0.0;
    double gap_star = 0.0;
    int level_lower = 0;
    int level_upper = 1;
    SpinConfiguration config_lower;  // labels read one grid step outside the window,
    SpinConfiguration config_upper;  // where the branches are near-classical
    double weight_lower = 0.0;
    double weight_upper = 0.0;
    int hamming_d = 0;
    bool exact = false;        // gap below the degeneracy scale (commuting terms)
    bool delocalized = false;  // some branch never reaches majority weight on either side,
                               // so its configuration label is a guess
    std::string classification;
};

// Scan the pairwise gap E_upper - E_lower along an already-computed profile
// (eigenvectors required).  Every interior local minimum below gap_threshold is
// refined by golden-section on the pair gap and reported.  Labels are taken from
// the grid slices adjacent to the minimum, not at the crossing itself, where the
// two branches are maximally hybridized and a configuration label is undefined.
std::vector<CrossingReport> detect_crossings(const OperatorFamily& family,
                                             const GapProfile& profile,
                                             const std::vector<std::pair<int, int>>& level_pairs,
                                             double gap_threshold,
                                             const CrossingThresholds& thresholds,
                                             const SolverOptions& solver = {});

}  // namespace qaa
