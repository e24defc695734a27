#pragma once

#include <cmath>
#include <cstdint>

// Counter-based splittable RNG.
//
// Every random quantity in the library is a pure function of (key, counter),
// where keys are derived from user seeds by mixing.  This gives bit-identical
// replay for any query order, which is what lets one fixed scenery be shared
// across many walks and lets replicas run in parallel and merge order-free.

namespace rwrs::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer (Stafford variant 13); bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Word i of the stream identified by `key`.
constexpr std::uint64_t at(std::uint64_t key, std::uint64_t ctr) {
    return mix64(key + (ctr + 1) * kGolden);
}

// Child key for a named substream (replica index, site sign, channel tag...).
constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t salt) {
    return mix64(key ^ mix64(salt + kGolden));
}

// Uniform on (0, 1]; never 0, so safe under log.
inline double u01(std::uint64_t key, std::uint64_t ctr) {
    return static_cast<double>((at(key, ctr) >> 11) + 1) * 0x1.0p-53;
}

// Standard Gaussian, Box-Muller, addressable by counter (two uniforms per draw).
inline double gauss(std::uint64_t key, std::uint64_t ctr) {
    const double u1 = u01(key, 2 * ctr);
    const double u2 = u01(key, 2 * ctr + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925287 * u2);
}

// Sequential view over a keyed stream.  next_gauss() keeps the Box-Muller
// companion value, halving the per-draw cost on long paths; the consumed
// counter range stays a pure function of the number of calls.
class Stream {
public:
    explicit Stream(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return at(key_, ctr_++); }
    double next_u01() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double next_gauss() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_u01();
        const double u2 = next_u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rwrs::rng
