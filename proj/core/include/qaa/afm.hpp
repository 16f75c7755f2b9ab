#pragma once

#include "qaa/operators.hpp"

namespace qaa {

enum class Boundary { open, periodic };

// H = sum_i Z_i Z_{i+1} + (-1)^i h Z_i + Gamma X_i  (antiferromagnetic coupling +1,
// staggered longitudinal field, uniform transverse field).
//
// Boundary conditions matter here: the even/odd gap dichotomy (domain-wall band on
// frustrated odd rings vs. exponentially split Neel doublet on even rings) needs a
// closed chain, so periodic is the default.  L=2 always gets a single bond.
struct AfmChainModel {
    int length = 0;
    double h = 0.0;
    double gamma = 0.0;
    Boundary bc = Boundary::periodic;
};

KLocalOperator build_afm_chain(int length, double h, double gamma,
                               Boundary bc = Boundary::periodic);
KLocalOperator build_afm_chain(const AfmChainModel& model);

}  // namespace qaa
