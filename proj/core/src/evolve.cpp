#include "qaa/evolve.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "qaa/eigensolve.hpp"
#include "qaa/parallel.hpp"

namespace qaa {

namespace {

using cplx = std::complex<double>;

// psi <- exp(-i dt H) psi via a Hermitian Lanczos subspace (real tridiagonal,
// complex basis) with one full reorthogonalization pass.  If m_max is not enough
// the time step is split in half recursively, so the result always meets tol.
void krylov_exp_apply(const KLocalOperator& h, double dt, StateVector& psi, double tol,
                      int m_max, int depth = 0) {
    const Eigen::Index dim = psi.size();
    const double norm0 = psi.norm();
    if (norm0 == 0.0 || dt == 0.0) return;
    if (depth > 40) throw std::runtime_error("krylov_exp_apply: step split recursion exhausted");

    const int m_cap = static_cast<int>(std::min<Eigen::Index>(m_max, dim));
    Eigen::MatrixXcd v(dim, m_cap);
    Eigen::VectorXd alpha(m_cap), beta(m_cap);  // beta[j] links v_j -> v_{j+1}
    v.col(0) = psi / norm0;

    StateVector w(dim);
    int m = 0;
    bool breakdown = false;
    auto small_exp_e1 = [&](int mm, double step) -> Eigen::VectorXcd {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(mm, mm);
        for (int i = 0; i < mm; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < mm) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        Eigen::VectorXcd phases(mm);
        for (int i = 0; i < mm; ++i)
            phases[i] = std::exp(cplx(0.0, -step * es.eigenvalues()[i]));
        return es.eigenvectors() *
               (phases.array() * es.eigenvectors().row(0).transpose().array().cast<cplx>())
                   .matrix();
    };

    while (m < m_cap) {
        h.apply(v.col(m).data(), w.data());
        alpha[m] = std::real(v.col(m).dot(w));
        w -= alpha[m] * v.col(m);
        if (m > 0) w -= beta[m - 1] * v.col(m - 1);
        // full reorthogonalization keeps the basis clean for tiny beta
        w -= v.leftCols(m + 1) * (v.leftCols(m + 1).adjoint() * w);
        beta[m] = w.norm();
        ++m;
        if (beta[m - 1] < 1e-13 * std::max(1.0, std::abs(alpha[m - 1]))) {
            breakdown = true;  // invariant subspace: the small exponential is exact
            break;
        }
        if (m == m_cap) break;
        v.col(m) = w / beta[m - 1];
        if (m >= 4 && (m % 4 == 0)) {
            const Eigen::VectorXcd u = small_exp_e1(m, dt);
            if (beta[m - 1] * std::abs(u[m - 1]) < tol) {
                psi = norm0 * (v.leftCols(m) * u);
                return;
            }
        }
    }

    const Eigen::VectorXcd u = small_exp_e1(m, dt);
    if (breakdown || beta[m - 1] * std::abs(u[m - 1]) < tol || m >= dim) {
        psi = norm0 * (v.leftCols(m) * u);
        return;
    }
    // not converged at m_max: halve the step
    krylov_exp_apply(h, 0.5 * dt, psi, 0.5 * tol, m_max, depth + 1);
    krylov_exp_apply(h, 0.5 * dt, psi, 0.5 * tol, m_max, depth + 1);
}

// fourth-order commutator-free Magnus step: two frozen-operator exponentials
// built from the Hamiltonian at the two Gauss nodes
void cf4_step(const OperatorFamily& family, const AnnealSchedule& sched, double t, double dt,
              StateVector& psi, double exp_tol, int m_max) {
    static const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
    static const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
    static const double a1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
    static const double a2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;
    const KLocalOperator h1 = family.at(sched.s_at(t + c1 * dt));
    const KLocalOperator h2 = family.at(sched.s_at(t + c2 * dt));

    KLocalOperator first(h1.n_spins());   // applied first: weights the early node more
    first.add_scaled(h1, a2);
    first.add_scaled(h2, a1);
    KLocalOperator second(h1.n_spins());
    second.add_scaled(h1, a1);
    second.add_scaled(h2, a2);

    krylov_exp_apply(first, dt, psi, exp_tol, m_max);
    krylov_exp_apply(second, dt, psi, exp_tol, m_max);
}

struct SuccessTarget {
    double e0 = 0.0;
    std::vector<std::uint32_t> manifold;          // diagonal case
    std::vector<Eigen::VectorXd> ground_vectors;  // generic case
};

SuccessTarget make_target(const KLocalOperator& h_final) {
    SuccessTarget t;
    if (h_final.is_diagonal()) {
        const std::uint64_t dim = h_final.dim();
        t.e0 = h_final.diagonal_energy(0);
        for (std::uint64_t b = 1; b < dim; ++b)
            t.e0 = std::min(t.e0, h_final.diagonal_energy(static_cast<std::uint32_t>(b)));
        const double tol = 1e-9 * std::max(1.0, std::abs(t.e0));
        for (std::uint64_t b = 0; b < dim; ++b)
            if (h_final.diagonal_energy(static_cast<std::uint32_t>(b)) <= t.e0 + tol)
                t.manifold.push_back(static_cast<std::uint32_t>(b));
        return t;
    }
    const int k = static_cast<int>(std::min<std::uint64_t>(4, h_final.dim()));
    const SpectrumSlice s = lowest_k(h_final, k, {}, true);
    t.e0 = s.energies[0];
    const double tol = 1e-9 * std::max(1.0, h_final.coeff_l1_norm());
    for (int i = 0; i < k; ++i)
        if (s.energies[static_cast<std::size_t>(i)] <= t.e0 + tol)
            t.ground_vectors.push_back(s.eigenvectors[static_cast<std::size_t>(i)]);
    return t;
}

}  // namespace

EvolutionResult evolve(const OperatorFamily& family, const AnnealSchedule& schedule,
                       const EvolveOptions& opts, const std::optional<StateVector>& initial) {
    schedule.validate();
    const double T = schedule.total_time;
    const Eigen::Index dim = Eigen::Index{1} << family.n_spins;

    StateVector psi;
    if (initial) {
        if (initial->size() != dim)
            throw std::invalid_argument("evolve: initial state dimension mismatch");
        const double nrm = initial->norm();
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw std::invalid_argument("evolve: initial state has no usable norm");
        psi = *initial / nrm;
    } else {
        psi = x_driver_ground(family.n_spins);
    }

    double t = 0.0, dt = std::min(opts.dt_max, T / 16.0);
    const double dt_floor = T * 1e-12;
    long long steps = 0;
    StateVector full(dim), half(dim);
    // the final sliver min(dt, T - t) may sit at rounding scale; only a rejection
    // is allowed to drive the working step size below the floor
    while (T - t > dt_floor) {
        const double step = std::min(dt, T - t);
        const double step_tol = opts.tol * (step / T);
        const double exp_tol = 0.05 * step_tol;
        full = psi;
        cf4_step(family, schedule, t, step, full, exp_tol, opts.krylov_dim_max);
        half = psi;
        cf4_step(family, schedule, t, 0.5 * step, half, 0.5 * exp_tol, opts.krylov_dim_max);
        cf4_step(family, schedule, t + 0.5 * step, 0.5 * step, half, 0.5 * exp_tol,
                 opts.krylov_dim_max);
        const double err = (full - half).norm();
        if (err <= step_tol) {
            psi.swap(half);
            t += step;
            ++steps;
            const double grow = err > 0 ? 0.9 * std::pow(step_tol / err, 0.2) : 2.0;
            dt = std::min(opts.dt_max, dt * std::min(2.0, std::max(1.0, grow)));
        } else {
            dt = step * std::max(0.25, 0.9 * std::pow(step_tol / err, 0.2));
            if (dt < dt_floor)
                throw std::runtime_error(
                    "evolve: step-size underflow (error control cannot meet tol)");
        }
    }

    EvolutionResult out;
    out.total_time = T;
    out.steps = steps;
    out.norm_drift = std::abs(psi.norm() - 1.0);

    const KLocalOperator h_final = family.at(1.0);
    const SuccessTarget target = make_target(h_final);
    double success = 0.0;
    if (!target.manifold.empty()) {
        for (std::uint32_t b : target.manifold) success += std::norm(psi[static_cast<Eigen::Index>(b)]);
    } else {
        for (const Eigen::VectorXd& g : target.ground_vectors) {
            const cplx ov = g.cast<cplx>().dot(psi);
            success += std::norm(ov);
        }
    }
    out.success_probability = success;
    out.residual_energy = std::real(psi.dot(h_final.apply(psi))) - target.e0;
    out.final_state = std::move(psi);
    return out;
}

double landau_zener_probability(double slope_a, double coupling_b, double total_time) {
    if (!(slope_a > 0) || coupling_b < 0 || total_time < 0)
        throw std::invalid_argument("landau_zener_probability: need a > 0, b >= 0, T >= 0");
    return std::exp(-M_PI * coupling_b * coupling_b * total_time / slope_a);
}

std::vector<SuccessPoint> success_curve(const OperatorFamily& family,
                                        const std::vector<double>& t_values,
                                        const AnnealSchedule& shape,
                                        const EvolveOptions& opts,
                                        const std::optional<StateVector>& initial) {
    for (std::size_t i = 0; i < t_values.size(); ++i) {
        if (!(t_values[i] > 0))
            throw std::invalid_argument("success_curve: T values must be positive");
        if (i > 0 && t_values[i] <= t_values[i - 1])
            throw std::invalid_argument("success_curve: T values must be ascending");
    }
    std::vector<SuccessPoint> out(t_values.size());
    parallel_for_index(t_values.size(), opts.n_threads, [&](std::size_t i) {
        AnnealSchedule sched = shape;
        sched.total_time = t_values[i];
        const EvolutionResult r = evolve(family, sched, opts, initial);
        out[i] = {r.total_time, r.success_probability, r.residual_energy, r.norm_drift, false};
    });
    for (std::size_t i = 1; i < out.size(); ++i)
        out[i].monotone_break = out[i].success_probability < out[i - 1].success_probability;
    return out;
}

}  // namespace qaa
