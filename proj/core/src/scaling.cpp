#include "qaa/scaling.hpp"

#include <cmath>
#include <stdexcept>

namespace qaa {

namespace {

FittedModel ols_log_fit(const std::string& name, const std::vector<double>& x,
                        const std::vector<double>& logy) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) mx += x[i], my += logy[i];
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (logy[i] - my);
    }
    if (sxx == 0) throw std::invalid_argument("fit_gap_scaling: degenerate size axis");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    FittedModel f;
    f.model = name;
    f.amplitude = std::exp(intercept);
    f.rate = -slope;  // log gap = intercept - rate * x
    double rss = 0, tss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = logy[i] - (intercept + slope * x[i]);
        rss += r * r;
        tss += (logy[i] - my) * (logy[i] - my);
    }
    f.rss = rss;
    f.r_squared = tss > 0 ? 1.0 - rss / tss : (rss < 1e-30 ? 1.0 : 0.0);
    const double nn = static_cast<double>(n), p = 2.0;
    f.aicc = nn * std::log(std::max(rss, 1e-300) / nn) + 2 * p + 2 * p * (p + 1) / (nn - p - 1);
    return f;
}

}  // namespace

ScalingFit fit_gap_scaling(const std::vector<double>& sizes, const std::vector<double>& gaps) {
    if (sizes.size() != gaps.size())
        throw std::invalid_argument("fit_gap_scaling: sizes/gaps length mismatch");
    if (sizes.size() < 4) throw std::invalid_argument("fit_gap_scaling: need at least 4 sizes");
    for (double g : gaps)
        if (!(g > 0)) throw std::invalid_argument("fit_gap_scaling: gaps must be positive");
    for (double s : sizes)
        if (!(s > 0)) throw std::invalid_argument("fit_gap_scaling: sizes must be positive");

    std::vector<double> logn(sizes.size()), logg(gaps.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        logn[i] = std::log(sizes[i]);
        logg[i] = std::log(gaps[i]);
    }
    ScalingFit fit;
    fit.sizes = sizes;
    fit.gaps = gaps;
    fit.polynomial = ols_log_fit("polynomial", logn, logg);
    fit.exponential = ols_log_fit("exponential", sizes, logg);
    fit.preferred = fit.polynomial.aicc <= fit.exponential.aicc ? "polynomial" : "exponential";
    return fit;
}

}  // namespace qaa
