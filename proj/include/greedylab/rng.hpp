#pragma once

#include <cmath>
#include <cstdint>

namespace greedylab {

// splitmix64. Small, fast, and identical on every platform, which matters more
// here than statistical perfection: sampled searches must be reproducible
// bit-for-bit from (seed, trial index) alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Independent stream for one trial of a seeded search.
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
        Rng r(seed ^ (0x9e3779b97f4a7c15ull + trial * 0xbf58476d1ce4e5b9ull));
        r.next();
        return r;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in {0, ..., n-1}.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    int sign() { return (next() & 1) ? 1 : -1; }

    /// Standard normal via Box-Muller (not std::normal_distribution, whose
    /// output is implementation-defined).
    double gaussian() {
        double u = uniform();
        if (u <= 0.0) u = 0x1.0p-53;
        const double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
    }

private:
    std::uint64_t state_;
};

}  // namespace greedylab
