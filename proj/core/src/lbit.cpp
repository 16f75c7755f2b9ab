#include "qaa/lbit.hpp"

#include <cmath>
#include <stdexcept>

#include "qaa/rng.hpp"

namespace qaa {

namespace {

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t m = c.size(); m-- > 0;) v = v * x + c[m];
    return v;
}

}  // namespace

LBitModel sample_lbit_model(int n_spins, std::uint64_t seed, const LBitParams& p) {
    if (n_spins < 2 || n_spins > 26)
        throw std::invalid_argument("sample_lbit_model: n_spins must be in [2, 26]");
    if (p.series_order < 0) throw std::invalid_argument("sample_lbit_model: series_order < 0");
    if (p.int_range_hi < p.int_range_lo)
        throw std::invalid_argument("sample_lbit_model: empty integer range");

    LBitModel m;
    m.n_spins = n_spins;
    m.params = p;
    Rng rng(seed);

    m.field_series.assign(static_cast<std::size_t>(n_spins),
                          std::vector<double>(static_cast<std::size_t>(p.series_order) + 1, 0.0));
    for (int i = 0; i < n_spins; ++i) {
        auto& c = m.field_series[static_cast<std::size_t>(i)];
        c[0] = static_cast<double>(rng.uniform_int(p.int_range_lo, p.int_range_hi));
        double scale = 1.0;
        for (int k = 1; k <= p.series_order; ++k) {
            scale *= p.series_decay;
            c[static_cast<std::size_t>(k)] = rng.uniform(-p.series_amp, p.series_amp) * scale;
        }
    }

    for (int i = 0; i < n_spins; ++i) {
        for (int j = i + 1; j < n_spins; ++j) {
            LBitPairSeries ps;
            ps.i = i;
            ps.j = j;
            ps.coeffs.assign(static_cast<std::size_t>(p.series_order) + 1, 0.0);
            const int dist = j - i;
            const double locality = std::exp(-static_cast<double>(dist) / p.decay_xi);
            if (dist == 1)
                ps.coeffs[0] = static_cast<double>(rng.uniform_int(p.int_range_lo, p.int_range_hi));
            double scale = 1.0;
            for (int k = 1; k <= p.series_order; ++k) {
                scale *= p.series_decay;
                ps.coeffs[static_cast<std::size_t>(k)] =
                    rng.uniform(-p.series_amp, p.series_amp) * scale * locality;
            }
            m.pair_series.push_back(std::move(ps));
        }
    }
    return m;
}

double lbit_field_at(const LBitModel& m, int i, double lambda) {
    return horner(m.field_series.at(static_cast<std::size_t>(i)), lambda);
}

double lbit_pair_at(const LBitModel& m, std::size_t pair_index, double lambda) {
    return horner(m.pair_series.at(pair_index).coeffs, lambda);
}

ClassicalCostFunction lbit_cost_at(const LBitModel& m, double lambda) {
    ClassicalCostFunction cost(m.n_spins);
    for (int i = 0; i < m.n_spins; ++i) cost.add_field(i, lbit_field_at(m, i, lambda));
    for (std::size_t p = 0; p < m.pair_series.size(); ++p) {
        const auto& ps = m.pair_series[p];
        const double j = lbit_pair_at(m, p, lambda);
        if (j != 0.0) cost.add_coupling({ps.i, ps.j}, j);
    }
    return cost;
}

KLocalOperator evaluate_lbit(const LBitModel& m, double lambda) {
    if (lambda < 0) throw std::invalid_argument("evaluate_lbit: lambda must be >= 0");
    return lbit_cost_at(m, lambda).to_operator();
}

namespace {

std::uint32_t diag_argmin(const LBitModel& m, double lambda) {
    return lbit_cost_at(m, lambda).argmin_energy();
}

}  // namespace

std::vector<LBitCrossing> find_ground_crossings(const LBitModel& m, double lambda_lo,
                                                double lambda_hi, int n_grid) {
    if (!(lambda_hi > lambda_lo) || n_grid < 2)
        throw std::invalid_argument("find_ground_crossings: bad scan window");
    std::vector<LBitCrossing> out;
    const double dl = (lambda_hi - lambda_lo) / (n_grid - 1);
    std::uint32_t prev = diag_argmin(m, lambda_lo);
    for (int g = 1; g < n_grid; ++g) {
        const double lam = lambda_lo + g * dl;
        const std::uint32_t cur = diag_argmin(m, lam);
        if (cur == prev) continue;
        // bisect the energy difference of the two competing configurations
        double lo = lam - dl, hi = lam;
        auto diff = [&](double l) {
            const ClassicalCostFunction c = lbit_cost_at(m, l);
            return c.energy(prev) - c.energy(cur);
        };
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (diff(mid) > 0 ? hi : lo) = mid;
        }
        LBitCrossing cr;
        cr.lambda = 0.5 * (lo + hi);
        cr.lower_before = SpinConfiguration(prev, m.n_spins);
        cr.lower_after = SpinConfiguration(cur, m.n_spins);
        cr.hamming_d = hamming(cr.lower_before, cr.lower_after);
        out.push_back(cr);
        prev = cur;
    }
    return out;
}

OperatorFamily lbit_lambda_family(const LBitModel& m, double probe) {
    auto poly_deriv_at = [](const std::vector<double>& c, double x) {
        double v = 0.0;
        for (std::size_t k = c.size(); k-- > 1;) v = v * x + c[k] * static_cast<double>(k);
        return v;
    };
    OperatorFamily f;
    f.n_spins = m.n_spins;
    f.at = [m, probe](double lambda) {
        KLocalOperator h = evaluate_lbit(m, lambda);
        if (probe != 0.0) h.add_scaled(transverse_field_driver(m.n_spins), probe);
        return h;
    };
    f.derivative = [m, poly_deriv_at](double lambda) {
        KLocalOperator d(m.n_spins);
        for (int i = 0; i < m.n_spins; ++i)
            d.add_z({i}, -poly_deriv_at(m.field_series[static_cast<std::size_t>(i)], lambda));
        for (const LBitPairSeries& p : m.pair_series)
            d.add_z({p.i, p.j}, -poly_deriv_at(p.coeffs, lambda));
        return d;
    };
    return f;
}

}  // namespace qaa
