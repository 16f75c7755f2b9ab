#include "qaa/perturbation.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace qaa {

namespace {

// configurations within Hamming distance `radius` of center, center first
std::vector<std::uint32_t> hamming_ball(std::uint32_t center, int n, int radius) {
    std::vector<std::uint32_t> ball{center};
    // enumerate flip subsets of size 1..radius
    auto rec = [&](auto&& self, int start, int remaining, std::uint32_t acc) -> void {
        if (remaining == 0) {
            ball.push_back(acc);
            return;
        }
        for (int i = start; i <= n - remaining; ++i)
            self(self, i + 1, remaining - 1, acc ^ (1u << i));
    };
    for (int r = 1; r <= radius; ++r) rec(rec, 0, r, center);
    return ball;
}

}  // namespace

PerturbationSeries rs_perturbation(const ClassicalCostFunction& cost,
                                   const SpinConfiguration& config, int order,
                                   double resonance_tol) {
    if (order < 1) throw std::invalid_argument("rs_perturbation: order must be >= 1");
    const int n = cost.n_spins();
    if (config.n != n) throw std::invalid_argument("rs_perturbation: spin count mismatch");

    const int radius = std::min(2 * order - 1, n);
    const std::vector<std::uint32_t> ball = hamming_ball(config.bits, n, radius);
    const std::size_t nb = ball.size();

    std::unordered_map<std::uint32_t, int> index;
    index.reserve(nb * 2);
    for (std::size_t i = 0; i < nb; ++i) index.emplace(ball[i], static_cast<int>(i));

    std::vector<double> energy(nb);
    for (std::size_t i = 0; i < nb; ++i) energy[i] = cost.energy(ball[i]);
    const double e0 = energy[0];

    // every reachable configuration must be energetically separated from config
    const double res_scale = resonance_tol * std::max(1.0, std::abs(e0));
    for (std::size_t i = 1; i < nb; ++i) {
        if (std::abs(e0 - energy[i]) <= res_scale)
            throw ResonanceError("rs_perturbation: resonant pair " + config.to_string() + " / " +
                                     SpinConfiguration(ball[i], n).to_string() +
                                     " (degenerate within the reachable neighborhood)",
                                 config, SpinConfiguration(ball[i], n));
    }

    // single-flip adjacency inside the ball
    std::vector<std::vector<int>> nbr(nb);
    for (std::size_t i = 0; i < nb; ++i) {
        for (int s = 0; s < n; ++s) {
            const auto it = index.find(ball[i] ^ (1u << s));
            if (it != index.end()) nbr[i].push_back(it->second);
        }
    }
    auto apply_driver = [&](const std::vector<double>& in) {
        std::vector<double> out(nb, 0.0);
        for (std::size_t i = 0; i < nb; ++i)
            for (int j : nbr[i]) out[static_cast<std::size_t>(j)] += in[i];
        return out;
    };

    // intermediate normalization: <config|psi^(k)> = 0 for k >= 1,
    // E^(k) = <config| V |psi^(k-1)>
    const int kmax = 2 * order;
    std::vector<std::vector<double>> psi(static_cast<std::size_t>(kmax) + 1,
                                         std::vector<double>(nb, 0.0));
    std::vector<double> e_corr(static_cast<std::size_t>(kmax) + 1, 0.0);
    psi[0][0] = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        const std::vector<double> v = apply_driver(psi[static_cast<std::size_t>(k - 1)]);
        e_corr[static_cast<std::size_t>(k)] = v[0];
        auto& pk = psi[static_cast<std::size_t>(k)];
        for (std::size_t m = 1; m < nb; ++m) {
            double num = v[m];
            for (int j = 2; j <= k - 1; j += 2)  // odd-order energy corrections vanish
                num -= e_corr[static_cast<std::size_t>(j)] *
                       psi[static_cast<std::size_t>(k - j)][m];
            pk[m] = num / (e0 - energy[m]);
        }
    }

    PerturbationSeries out;
    out.config = config;
    out.order = order;
    out.coeffs.push_back(e0);
    for (int m = 1; m <= order; ++m) out.coeffs.push_back(e_corr[static_cast<std::size_t>(2 * m)]);
    return out;
}

std::optional<double> crossing_location_estimate(const PerturbationSeries& a,
                                                 const PerturbationSeries& b,
                                                 double lambda_max) {
    if (!(lambda_max > 0))
        throw std::invalid_argument("crossing_location_estimate: lambda_max must be > 0");
    const std::size_t nc = std::max(a.coeffs.size(), b.coeffs.size());
    std::vector<double> diff(nc, 0.0);
    double scale = 0.0;
    for (std::size_t m = 0; m < nc; ++m) {
        const double am = m < a.coeffs.size() ? a.coeffs[m] : 0.0;
        const double bm = m < b.coeffs.size() ? b.coeffs[m] : 0.0;
        diff[m] = am - bm;
        scale = std::max({scale, std::abs(am), std::abs(bm)});
    }
    bool identical = true;
    for (double d : diff)
        if (std::abs(d) > 1e-14 * std::max(1.0, scale)) identical = false;
    if (identical)
        throw std::invalid_argument("crossing_location_estimate: identical series, no crossing");

    auto poly = [&](double mu) {  // difference as a polynomial in mu = lambda^2
        double v = 0.0;
        for (std::size_t m = nc; m-- > 0;) v = v * mu + diff[m];
        return v;
    };

    const double mu_max = lambda_max * lambda_max;
    const int steps = 4096;
    double prev_mu = 0.0, prev_v = poly(0.0);
    for (int i = 1; i <= steps; ++i) {
        const double mu = mu_max * i / steps;
        const double v = poly(mu);
        if (v == 0.0) return std::sqrt(mu);
        if (prev_v != 0.0 && std::signbit(v) != std::signbit(prev_v)) {
            double lo = prev_mu, hi = mu;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                (std::signbit(poly(mid)) == std::signbit(prev_v) ? lo : hi) = mid;
            }
            return std::sqrt(0.5 * (lo + hi));
        }
        prev_mu = mu;
        prev_v = v;
    }
    return std::nullopt;
}

}  // namespace qaa
