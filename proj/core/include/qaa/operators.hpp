#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "qaa/spin.hpp"

namespace qaa {

enum class Pauli : std::uint8_t { Z, X };

// One k-local Pauli word: coeff * prod_{i in zmask} Z_i * prod_{i in xmask} X_i.
// zmask and xmask are disjoint (no Y support), so every operator here is real symmetric.
struct PauliTerm {
    std::uint32_t zmask = 0;
    std::uint32_t xmask = 0;
    double coeff = 0.0;
};

class KLocalOperator {
public:
    KLocalOperator() = default;
    explicit KLocalOperator(int n_spins);

    int n_spins() const { return n_; }
    std::size_t dim() const { return std::size_t{1} << n_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }

    // term from an explicit support + per-index Pauli word
    void add_term(const std::vector<int>& support, const std::vector<Pauli>& word, double coeff);
    void add_term(std::uint32_t zmask, std::uint32_t xmask, double coeff);
    void add_z(std::initializer_list<int> sites, double coeff);
    void add_x(int site, double coeff);
    void add_constant(double c) { add_term(0u, 0u, c); }

    // *this += scale * other (term lists concatenate; no simplification)
    void add_scaled(const KLocalOperator& other, double scale);

    bool is_diagonal() const;

    // sum of |coeff|; cheap upper bound on the spectral radius, used for tolerances
    double coeff_l1_norm() const;

    // out = H * in, gather form: out[b] = sum_t c_t * zsign_t(b) * in[b ^ x_t].
    // Each output element is written by exactly one pass, so partitioning the
    // output range across threads is race-free and bitwise deterministic.
    template <class Scalar>
    void apply(const Scalar* in, Scalar* out) const {
        const std::size_t d = dim();
        for (std::size_t b = 0; b < d; ++b) out[b] = Scalar{0};
        for (const PauliTerm& t : terms_) {
            const std::uint32_t z = t.zmask, x = t.xmask;
            const double c = t.coeff;
            if (z == 0) {
                for (std::size_t b = 0; b < d; ++b) out[b] += c * in[b ^ x];
            } else {
                for (std::size_t b = 0; b < d; ++b) {
                    const double s = (std::popcount(z & ~static_cast<std::uint32_t>(b)) & 1) ? -c : c;
                    out[b] += s * in[b ^ x];
                }
            }
        }
    }

    Eigen::VectorXd apply(const Eigen::VectorXd& psi) const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& psi) const;

    // classical energy of one configuration; valid for diagonal operators
    double diagonal_energy(std::uint32_t config) const;

    // all 2^N diagonal entries; rejects operators with any X factor
    std::vector<double> diagonal_energies() const;

    // test oracle only; guarded to N <= 14
    Eigen::MatrixXd materialize_dense() const;

private:
    int n_ = 0;
    std::vector<PauliTerm> terms_;
};

// driver sum_i X_i with unit coefficients
KLocalOperator transverse_field_driver(int n_spins);

}  // namespace qaa
