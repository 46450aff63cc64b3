#pragma once

#include <cmath>
#include <cstdint>

namespace stosep::rng {

// SplitMix64 finalizer; full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        return mix64(state);
    }

    // uniform in [0, 1), 53-bit mantissa
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Key of an independent stream, derived from (seed, domain, counter). Each
// sampled point owns one stream, so generation order and thread count cannot
// change the output.
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t domain, std::uint64_t counter) {
    std::uint64_t k = mix64(seed ^ (0x9e3779b97f4a7c15ULL * (domain + 1)));
    return mix64(k ^ (counter + 0xd1b54a32d192ed03ULL));
}

// Per-point generator: uniforms straight from SplitMix64, Gaussians by
// Marsaglia polar rejection (exact, no inverse CDF).
struct Stream {
    SplitMix64 gen;
    double spare = 0.0;
    bool has_spare = false;

    explicit Stream(std::uint64_t key) : gen(key) {}

    double uniform() { return gen.next_double(); }

    double gaussian() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        double u, v, s;
        do {
            u = 2.0 * gen.next_double() - 1.0;
            v = 2.0 * gen.next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare = v * f;
        has_spare = true;
        return u * f;
    }
};

}  // namespace stosep::rng
