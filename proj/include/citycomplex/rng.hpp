#pragma once

#include <cstdint>

namespace citycomplex {

/// Counter-based generator: output i is splitmix64(seed, i). The stream is
/// a pure function of (seed, counter), so fixtures reproduce bit-exactly on
/// any platform and language that implements splitmix64.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller; both draws consumed per pair.
    double normal();

    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Knuth's product method; fine for the means used here (< 1e3).
    int poisson(double mean);

    /// Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n);

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace citycomplex
