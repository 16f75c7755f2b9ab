#pragma once

#include <functional>
#include <stdexcept>

#include "qaa/afm.hpp"
#include "qaa/cost.hpp"
#include "qaa/operators.hpp"

namespace qaa {

// One-parameter operator family H(param) plus its parameter derivative (needed for
// the adiabatic matrix element).  All sweep/evolve machinery works on this shape.
struct OperatorFamily {
    int n_spins = 0;
    std::function<KLocalOperator(double)> at;
    std::function<KLocalOperator(double)> derivative;  // may be empty
};

// Interpolation s*H_p + (1-s)*H_b between a diagonal problem operator and the
// transverse-field driver sum_i X_i.  Also exposed in the lambda form
// H_p + lambda*H_b with lambda = (1-s)/s.
struct AnnealingPath {
    KLocalOperator problem;  // all-Z
    KLocalOperator driver;   // sum of single-spin X, unit coefficients

    int n_spins() const { return problem.n_spins(); }

    KLocalOperator at_s(double s) const {
        KLocalOperator h(problem.n_spins());
        h.add_scaled(problem, s);
        h.add_scaled(driver, 1.0 - s);
        return h;
    }
    KLocalOperator at_lambda(double lambda) const {
        if (lambda < 0) throw std::invalid_argument("AnnealingPath: lambda must be >= 0");
        KLocalOperator h(problem.n_spins());
        h.add_scaled(problem, 1.0);
        h.add_scaled(driver, lambda);
        return h;
    }

    // dH/ds = H_p - H_b
    KLocalOperator s_derivative() const {
        KLocalOperator d(problem.n_spins());
        d.add_scaled(problem, 1.0);
        d.add_scaled(driver, -1.0);
        return d;
    }

    OperatorFamily family_s() const {
        return {n_spins(), [p = *this](double s) { return p.at_s(s); },
                [p = *this](double) { return p.s_derivative(); }};
    }
    OperatorFamily family_lambda() const {
        return {n_spins(), [p = *this](double l) { return p.at_lambda(l); },
                [p = *this](double) { return p.driver; }};
    }
};

inline AnnealingPath build_annealing_path(const ClassicalCostFunction& cost) {
    return {cost.to_operator(), transverse_field_driver(cost.n_spins())};
}

// staggered-field chain swept in h at fixed Gamma; dH/dh is the staggered Z sum
inline OperatorFamily afm_h_family(int length, double gamma,
                                   Boundary bc = Boundary::periodic) {
    OperatorFamily f;
    f.n_spins = length;
    f.at = [length, gamma, bc](double h) { return build_afm_chain(length, h, gamma, bc); };
    f.derivative = [length](double) {
        KLocalOperator d(length);
        for (int i = 0; i < length; ++i) d.add_z({i}, (i % 2 == 0) ? 1.0 : -1.0);
        return d;
    };
    return f;
}

// two-level sweep H(s) = a*(s - 1/2)*Z + b*X on one spin, s in [0,1]
inline OperatorFamily landau_zener_family(double a, double b) {
    OperatorFamily f;
    f.n_spins = 1;
    f.at = [a, b](double s) {
        KLocalOperator h(1);
        h.add_z({0}, a * (s - 0.5));
        h.add_x(0, b);
        return h;
    };
    f.derivative = [a](double) {
        KLocalOperator d(1);
        d.add_z({0}, a);
        return d;
    };
    return f;
}

}  // namespace qaa
