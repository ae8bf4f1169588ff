#pragma once

#include <cmath>
#include <cstdint>

#include "ppc/bits.hpp"
#include "ppc/decoders.hpp"

namespace ppc {

/// BPSK/AWGN channel parameterized by per-information-bit SNR.
struct ChannelConfig {
    double eb_n0_db = 0.0;
    double rate = 1.0;
    std::uint64_t seed = 0;

    double noise_variance() const
    {
        return 1.0 / (2.0 * rate * std::pow(10.0, eb_n0_db / 10.0));
    }
};

/// Deterministic counter-keyed generator (splitmix64 core). Streams keyed by
/// (seed, stream) are independent, so per-frame draws never depend on
/// scheduling.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed + 0x9E3779B97F4A7C15ULL) ^
                 mix(stream * 0xD2B74407B1CE6E93ULL + 0x8BB84B93962EACC9ULL))
    {
    }

    std::uint64_t next_u64()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in (0, 1].
    double next_unit()
    {
        return 1.0 - static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double next_gaussian()
    {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    std::uint8_t next_bit()
    {
        if (bits_left_ == 0) {
            bit_buf_ = next_u64();
            bits_left_ = 64;
        }
        const std::uint8_t b = bit_buf_ & 1;
        bit_buf_ >>= 1;
        --bits_left_;
        return b;
    }

private:
    static std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
    std::uint64_t bit_buf_ = 0;
    int bits_left_ = 0;
};

/// Maps bit 0 to +1 and bit 1 to -1, adds Gaussian noise of the configured
/// variance, and returns channel LLRs 2y/sigma^2.
LlrVector modulate_and_transmit(const BitVector& x, const ChannelConfig& ch, CounterRng& rng);

/// In-place variant reusing the output buffer.
void modulate_and_transmit_into(const BitVector& x, const ChannelConfig& ch, CounterRng& rng,
                                LlrVector& out);

}  // namespace ppc
