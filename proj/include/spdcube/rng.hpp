#pragma once

#include <cmath>
#include <cstdint>

namespace spdcube {

// Deterministic, seedable RNG with named substreams.
//
// A master seed plus a substream id select an independent xoshiro256++
// generator; the four words of state come from a splitmix64 walk starting at
// seed ^ (id * 0x9E3779B97F4A7C15). The same (seed, id) always yields the
// same sequence on every platform, which is what the byte-identical output
// contract rests on.

inline std::uint64_t splitmix64(std::uint64_t& s)
{
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Xoshiro256pp {
public:
    Xoshiro256pp(std::uint64_t seed, std::uint64_t stream_id)
    {
        std::uint64_t s = seed ^ (stream_id * 0x9E3779B97F4A7C15ULL);
        for (auto& w : state_) w = splitmix64(s);
    }

    std::uint64_t next()
    {
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

    // Uniform in [0, 1) with 53-bit resolution.
    double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Exponential with the given rate; 1 - u01() is in (0, 1] so the log is finite.
    double exponential(double rate) { return -std::log(1.0 - u01()) / rate; }

    // Standard normal via Box-Muller; one draw consumes two uniforms and the
    // second deviate is discarded so consumption per call is fixed.
    double normal()
    {
        double u1 = 1.0 - u01();
        double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    std::uint64_t state_[4];
};

// Substream ids used by the HBT simulator (documented part of the output contract).
namespace stream_id {
inline constexpr std::uint64_t pairs = 1;
inline constexpr std::uint64_t route = 2;
inline constexpr std::uint64_t detect1 = 3;
inline constexpr std::uint64_t detect2 = 4;
inline constexpr std::uint64_t dark1 = 5;
inline constexpr std::uint64_t dark2 = 6;
}

}
