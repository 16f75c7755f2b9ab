#pragma once

#include <cstdint>
#include <random>

namespace qaa {

// splitmix64 finalizer; the documented stable hash behind all per-task seeding.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-task seed for task `index` under `master`.  Stable contract: two rounds of
// splitmix64 over master mixed with the index; identical across platforms and runs.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 1));
}

// mt19937_64 with hand-rolled draw helpers.  std::uniform_*_distribution is not
// pinned by the standard; these are, which keeps seeded outputs byte-stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // uniform in [0,1) with 53-bit resolution
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, n), rejection-sampled to avoid modulo bias
    std::uint64_t uniform_int(std::uint64_t n) {
        const std::uint64_t bound = n * (~std::uint64_t{0} / n);
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= bound);
        return v % n;
    }

    // uniform integer in [lo, hi] inclusive
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(uniform_int(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace qaa
