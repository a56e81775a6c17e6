#pragma once

#include <cmath>
#include <cstdint>

namespace sdcalc {

/// splitmix64 step (Vigna 2015). Used both as a stream mixer and as the
/// core generator; passes BigCrush and is trivially reproducible.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic random stream keyed by (seed, stream id). Distinct
/// streams are decorrelated by hashing the key through splitmix64 twice.
/// All draws are defined in terms of 53-bit uniforms, so output is
/// bit-reproducible for a fixed key on any IEEE-754 platform.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed;
        std::uint64_t mixed = splitmix64_next(s);
        s = stream ^ 0x6a09e667f3bcc909ULL;
        state_ = mixed ^ splitmix64_next(s);
    }

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    /// Uniform on (0,1]: (k+1)/2^53 with k uniform on [0, 2^53).
    double uniform01() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1p-53;
    }

    /// Unit-rate exponential.
    double exponential() { return -std::log(uniform01()); }

    /// Standard normal, Box-Muller with one cached deviate.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u = uniform01();
        double v = uniform01();
        double rad = std::sqrt(-2.0 * std::log(u));
        double ang = 6.283185307179586476925286766559 * v;
        cached_ = rad * std::sin(ang);
        has_cached_ = true;
        return rad * std::cos(ang);
    }

    /// Poisson count by Knuth's product method; intended for small means
    /// (jump counts per grid cell).
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        double limit = std::exp(-mean);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace sdcalc
