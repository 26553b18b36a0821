#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace starnoma {

/**
 * @brief Seedable, splittable random stream.
 *
 * Engine: xoshiro256++ with state derived from (seed, stream) through the
 * SplitMix64 finalizer. Identical (seed, stream) pairs reproduce identical
 * draw sequences; distinct stream ids give statistically independent
 * streams, so per-trial streams can be handed to worker threads without
 * any shared state. The engine choice is an implementation constant of
 * this library: changing it changes every Monte Carlo byte-for-byte.
 *
 * Normal variates use the Box-Muller transform; the second variate of each
 * pair is cached inside the stream, which keeps the uniform draw sequence
 * aligned no matter how callers interleave normal() and uniform01().
 */
class RngStream {
public:
    RngStream() : RngStream(1, 0) {}

    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) {
        // Mix the stream id into the SplitMix chain so that nearby
        // (seed, stream) pairs land in unrelated regions of state space.
        std::uint64_t x = seed;
        x = mix(x);
        x ^= 0x9E3779B97F4A7C15ULL * (stream + 1);
        x = mix(x);
        for (auto& s : state_) {
            x += 0x9E3779B97F4A7C15ULL;
            s = mix(x);
        }
        if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0)
            state_[0] = 1;  // xoshiro must not start from the all-zero state
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0,1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on (0,1]; safe as a log() argument.
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal variate (Box-Muller, pair cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double phi = 2.0 * pi_ * uniform01();
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

    /// Circularly symmetric complex Gaussian with the given total variance.
    std::complex<double> cscg(double variance) {
        const double s = std::sqrt(variance / 2.0);
        const double a = normal();
        const double b = normal();
        return {s * a, s * b};
    }

private:
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static constexpr double pi_ = 3.14159265358979323846;

    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace starnoma
