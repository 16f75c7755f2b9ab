#include "qaa/operators.hpp"

#include <stdexcept>

namespace qaa {

KLocalOperator::KLocalOperator(int n_spins) : n_(n_spins) {
    if (n_spins < 1 || n_spins > 26)
        throw std::invalid_argument("KLocalOperator: n_spins must be in [1, 26]");
}

void KLocalOperator::add_term(std::uint32_t zmask, std::uint32_t xmask, double coeff) {
    const std::uint32_t all = (n_ >= 32) ? ~0u : ((1u << n_) - 1u);
    if ((zmask & ~all) || (xmask & ~all))
        throw std::invalid_argument("KLocalOperator::add_term: site index out of range");
    if (zmask & xmask)
        throw std::invalid_argument("KLocalOperator::add_term: Z and X on the same site (no Y support)");
    terms_.push_back({zmask, xmask, coeff});
}

void KLocalOperator::add_term(const std::vector<int>& support, const std::vector<Pauli>& word,
                              double coeff) {
    if (support.size() != word.size())
        throw std::invalid_argument("KLocalOperator::add_term: support/word size mismatch");
    std::uint32_t z = 0, x = 0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const int site = support[i];
        if (site < 0 || site >= n_)
            throw std::invalid_argument("KLocalOperator::add_term: site index out of range");
        const std::uint32_t bit = 1u << site;
        if ((z | x) & bit)
            throw std::invalid_argument("KLocalOperator::add_term: duplicate site in support");
        (word[i] == Pauli::Z ? z : x) |= bit;
    }
    terms_.push_back({z, x, coeff});
}

void KLocalOperator::add_z(std::initializer_list<int> sites, double coeff) {
    std::uint32_t z = 0;
    for (int site : sites) {
        if (site < 0 || site >= n_)
            throw std::invalid_argument("KLocalOperator::add_z: site index out of range");
        const std::uint32_t bit = 1u << site;
        if (z & bit) throw std::invalid_argument("KLocalOperator::add_z: duplicate site");
        z |= bit;
    }
    terms_.push_back({z, 0u, coeff});
}

void KLocalOperator::add_x(int site, double coeff) {
    if (site < 0 || site >= n_)
        throw std::invalid_argument("KLocalOperator::add_x: site index out of range");
    terms_.push_back({0u, 1u << site, coeff});
}

void KLocalOperator::add_scaled(const KLocalOperator& other, double scale) {
    if (other.n_ != n_)
        throw std::invalid_argument("KLocalOperator::add_scaled: spin count mismatch");
    // skip vanished terms so interpolation endpoints stay exactly diagonal
    if (scale == 0.0) return;
    terms_.reserve(terms_.size() + other.terms_.size());
    for (const PauliTerm& t : other.terms_) terms_.push_back({t.zmask, t.xmask, scale * t.coeff});
}

bool KLocalOperator::is_diagonal() const {
    for (const PauliTerm& t : terms_)
        if (t.xmask != 0) return false;
    return true;
}

double KLocalOperator::coeff_l1_norm() const {
    double s = 0;
    for (const PauliTerm& t : terms_) s += std::abs(t.coeff);
    return s;
}

Eigen::VectorXd KLocalOperator::apply(const Eigen::VectorXd& psi) const {
    if (psi.size() != static_cast<Eigen::Index>(dim()))
        throw std::invalid_argument("KLocalOperator::apply: dimension mismatch");
    Eigen::VectorXd out(psi.size());
    apply(psi.data(), out.data());
    return out;
}

Eigen::VectorXcd KLocalOperator::apply(const Eigen::VectorXcd& psi) const {
    if (psi.size() != static_cast<Eigen::Index>(dim()))
        throw std::invalid_argument("KLocalOperator::apply: dimension mismatch");
    Eigen::VectorXcd out(psi.size());
    apply(psi.data(), out.data());
    return out;
}

double KLocalOperator::diagonal_energy(std::uint32_t config) const {
    double e = 0;
    for (const PauliTerm& t : terms_) {
        // contributions from X terms vanish on the diagonal
        if (t.xmask != 0) continue;
        e += (std::popcount(t.zmask & ~config) & 1) ? -t.coeff : t.coeff;
    }
    return e;
}

std::vector<double> KLocalOperator::diagonal_energies() const {
    if (!is_diagonal())
        throw std::invalid_argument("diagonal_energies: operator has X terms");
    if (n_ > 24)
        throw std::invalid_argument(
            "diagonal_energies: N > 24 would materialize > 128 MiB; stream diagonal_energy instead");
    std::vector<double> e(dim(), 0.0);
    for (const PauliTerm& t : terms_) {
        const std::uint32_t z = t.zmask;
        const double c = t.coeff;
        for (std::size_t b = 0; b < e.size(); ++b)
            e[b] += (std::popcount(z & ~static_cast<std::uint32_t>(b)) & 1) ? -c : c;
    }
    return e;
}

Eigen::MatrixXd KLocalOperator::materialize_dense() const {
    if (n_ > 14)
        throw std::invalid_argument("materialize_dense: test oracle limited to N <= 14");
    const std::size_t d = dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    Eigen::VectorXd col = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t b = 0; b < d; ++b) {
        col.setZero();
        col[static_cast<Eigen::Index>(b)] = 1.0;
        m.col(static_cast<Eigen::Index>(b)) = apply(col);
    }
    return m;
}

KLocalOperator transverse_field_driver(int n_spins) {
    KLocalOperator h(n_spins);
    for (int i = 0; i < n_spins; ++i) h.add_x(i, 1.0);
    return h;
}

}  // namespace qaa
