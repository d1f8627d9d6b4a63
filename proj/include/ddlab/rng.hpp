#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace ddlab {

// Counter-based substreams: every (seed, stream) pair yields an independent,
// reproducible generator, so chunked Monte-Carlo results do not depend on the
// worker count.
struct Rng {
    std::uint64_t state;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : state(mix(mix(seed) ^ mix(stream * 0x2545f4914f6cdd1dULL + 0x123456789abcdefULL))) {}

    std::uint64_t next_u64() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    // standard normal, Box-Muller
    double next_gaussian() {
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    std::complex<double> next_complex_gaussian() {
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double r = std::sqrt(-std::log(u1)); // each component variance 1/2
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }
};

} // namespace ddlab
