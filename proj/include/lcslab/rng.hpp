#pragma once

#include <cstdint>
#include <limits>

namespace lcslab {

// Counter-based stream: output t is a pure function of (seed, stream_index, t),
// so a stream reproduces the same sequence on every platform and under any
// thread schedule. Streams with distinct (seed, stream_index) are independent
// for Monte Carlo purposes.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream_index)
        : seed_(seed), stream_(stream_index),
          key_(mix(mix(seed + kGamma) ^ mix(stream_index + kStreamSalt))) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

    std::uint64_t next() { return mix(key_ + (++counter_) * kGamma); }

    // Uniform on [0,1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Unbiased uniform on {0,...,bound-1} (multiply-shift with rejection).
    std::uint32_t uniform_int(std::uint32_t bound) {
        std::uint64_t x = next();
        unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = (0 - std::uint64_t{bound}) % bound;
            while (lo < threshold) {
                x = next();
                m = static_cast<unsigned __int128>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 64);
    }

    // Derived stream, decorrelated from this one; fresh counter.
    RngStream split(std::uint64_t tag) const {
        return RngStream(seed_, mix(stream_ ^ mix(tag + kGamma)));
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;

    // SplitMix64 finalizer (Stafford mix13).
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace lcslab
