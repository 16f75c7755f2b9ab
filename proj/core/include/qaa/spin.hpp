#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qaa {

// N-spin classical configuration packed into a word.
// Convention: bit i of `bits` is spin i; bit = 1 <-> sigma^z eigenvalue +1.
// Amplitude index b of a state vector encodes the same configuration (little-endian).
struct SpinConfiguration {
    std::uint32_t bits = 0;
    int n = 0;

    SpinConfiguration() = default;
    SpinConfiguration(std::uint32_t b, int n_spins) : bits(b), n(n_spins) {}

    int spin(int i) const { return (bits >> i) & 1u ? +1 : -1; }
    bool bit(int i) const { return (bits >> i) & 1u; }

    // site 0 printed first
    std::string to_string() const {
        std::string s(static_cast<std::size_t>(n), '0');
        for (int i = 0; i < n; ++i)
            if (bit(i)) s[static_cast<std::size_t>(i)] = '1';
        return s;
    }

    friend bool operator==(const SpinConfiguration& a, const SpinConfiguration& b) {
        return a.n == b.n && a.bits == b.bits;
    }
};

inline int hamming(const SpinConfiguration& a, const SpinConfiguration& b) {
    if (a.n != b.n) throw std::invalid_argument("hamming: configurations of different length");
    return std::popcount(a.bits ^ b.bits);
}

}  // namespace qaa
