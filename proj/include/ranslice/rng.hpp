#pragma once

#include <cstdint>
#include <random>

namespace ranslice {

// One generator per simulation replica. Draw order is fixed by the TTI loop so
// equal seeds reproduce runs bit-for-bit on a given platform.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double normal(Rng& rng, double mean = 0.0, double sigma = 1.0) {
    if (sigma <= 0.0) return mean;
    return std::normal_distribution<double>(mean, sigma)(rng);
}

inline long long poisson(Rng& rng, double mean) {
    if (mean <= 0.0) return 0;
    return std::poisson_distribution<long long>(mean)(rng);
}

inline bool bernoulli(Rng& rng, double p) {
    return std::bernoulli_distribution(p)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace ranslice
