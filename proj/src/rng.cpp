#include "citycomplex/rng.hpp"

#include <cmath>

namespace citycomplex {

double CounterRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

int CounterRng::poisson(double mean) {
    if (mean <= 0.0) return 0;
    double limit = std::exp(-mean);
    double product = uniform();
    int k = 0;
    while (product > limit) {
        product *= uniform();
        ++k;
    }
    return k;
}

std::uint64_t CounterRng::uniform_int(std::uint64_t n) {
    if (n == 0) return 0;
    // Rejection to avoid modulo bias.
    std::uint64_t threshold = (~std::uint64_t{0} / n) * n;
    std::uint64_t x = next_u64();
    while (x >= threshold) x = next_u64();
    return x % n;
}

}  // namespace citycomplex
