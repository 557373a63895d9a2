#pragma once

#include <random>

#include "secagg/common.hpp"

namespace secagg {

// Deterministic stream of draws. mt19937_64 output is fully specified by the
// standard; the bounded draws below avoid std distributions, whose results are
// implementation-defined, so equal seeds give byte-equal runs everywhere.
class Rng {
public:
    explicit Rng(u64 seed) : eng_(seed) {}

    u64 next_u64() { return eng_(); }

    // Uniform in [lo, hi], both ends inclusive. Unbiased via lower rejection.
    u64 uniform(u64 lo, u64 hi) {
        const u64 span = hi - lo;
        if (span == std::numeric_limits<u64>::max()) return next_u64();
        const u64 n = span + 1;
        const u64 reject_below = (0 - n) % n;  // 2^64 mod n
        u64 x;
        do {
            x = next_u64();
        } while (x < reject_below);
        return lo + x % n;
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform_real(); }

    bool bernoulli(double p) { return uniform_real() < p; }

private:
    std::mt19937_64 eng_;
};

}  // namespace secagg
