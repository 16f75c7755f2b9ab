#include "qaa/afm.hpp"

#include <stdexcept>

namespace qaa {

KLocalOperator build_afm_chain(int length, double h, double gamma, Boundary bc) {
    if (length < 2) throw std::invalid_argument("build_afm_chain: need L >= 2");
    KLocalOperator op(length);
    for (int i = 0; i + 1 < length; ++i) op.add_z({i, i + 1}, 1.0);
    if (bc == Boundary::periodic && length >= 3) op.add_z({length - 1, 0}, 1.0);
    for (int i = 0; i < length; ++i) {
        if (h != 0.0) op.add_z({i}, (i % 2 == 0) ? h : -h);
        if (gamma != 0.0) op.add_x(i, gamma);
    }
    return op;
}

KLocalOperator build_afm_chain(const AfmChainModel& m) {
    return build_afm_chain(m.length, m.h, m.gamma, m.bc);
}

}  // namespace qaa
