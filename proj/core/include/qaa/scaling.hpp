#pragma once

#include <string>
#include <vector>

namespace qaa {

struct FittedModel {
    std::string model;        // "polynomial" (A * N^-b) or "exponential" (A * e^-cN)
    double amplitude = 0.0;   // A
    double rate = 0.0;        // b or c
    double rss = 0.0;         // residual sum of squares in log space
    double r_squared = 0.0;   // in log space
    double aicc = 0.0;        // small-sample-corrected information criterion
};

struct ScalingFit {
    std::vector<double> sizes;
    std::vector<double> gaps;
    FittedModel polynomial;
    FittedModel exponential;
    std::string preferred;  // model with the lower score
};

// Ordinary least squares on log(gap) against log(N) (polynomial model) and
// against N (exponential model).  Both fits carry an AICc score with p = 2
// mean-function coefficients; since p is equal for the two models the
// comparison reduces to residual size, but the scores are reported so fits on
// different data remain comparable.  Model selection is invariant under a
// uniform rescaling of all gaps (a pure shift in log space).
// Requires at least 4 sizes and strictly positive gaps.
ScalingFit fit_gap_scaling(const std::vector<double>& sizes, const std::vector<double>& gaps);

}  // namespace qaa
