#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace spex {

/// Replication-addressable seed. The stream for (value, i) is derived by
/// an avalanche mix of both fields (see Rng), so distinct replication
/// indices of one master seed give independent, reproducible streams.
struct Seed {
    std::uint64_t value = 0;
    std::uint64_t replication_index = 0;

    Seed with_index(std::uint64_t i) const { return {value, i}; }
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ stream, state derived as
///   s = splitmix64 sequence at  value XOR splitmix64((index+1)*golden).
/// Identical (value, index) gives bit-identical draws on any platform;
/// no standard-library distributions are used anywhere.
class Rng {
public:
    explicit Rng(Seed seed) {
        std::uint64_t idx = (seed.replication_index + 1) * 0x9E3779B97F4A7C15ULL;
        std::uint64_t st = seed.value ^ splitmix64(idx);
        for (auto& w : s_) w = splitmix64(st);
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Exponential(1); uses -log(1-U) with U in [0,1) so the argument
    /// never hits zero.
    double exponential() { return -std::log1p(-uniform01()); }

    /// Exact Poisson draw by inversion. Means above 32 are split into
    /// chunks (Poisson additivity), keeping the inversion loop short and
    /// the result exact for the window sizes used here.
    std::uint64_t poisson(double mean) {
        if (!(mean >= 0.0) || !std::isfinite(mean))
            throw std::invalid_argument("Rng::poisson: bad mean");
        std::uint64_t total = 0;
        while (mean > 32.0) {
            total += poisson_small(32.0);
            mean -= 32.0;
        }
        return total + poisson_small(mean);
    }

private:
    std::uint64_t poisson_small(double mean) {
        if (mean <= 0.0) return 0;
        double u = uniform01();
        double p = std::exp(-mean);
        double cum = p;
        std::uint64_t k = 0;
        while (u >= cum && k < 1024) {
            ++k;
            p *= mean / static_cast<double>(k);
            cum += p;
        }
        return k;
    }

    std::uint64_t s_[4];
};

}  // namespace spex
