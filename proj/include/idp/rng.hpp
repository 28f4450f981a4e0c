#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace idp {

/// xoshiro256++ (Blackman & Vigna). Satisfies UniformRandomBitGenerator, so
/// it plugs into <random> and Boost.Random distributions. The standard
/// engines were the dominant Monte-Carlo cost.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    /// State filled from a SplitMix64 sequence started at `seed`.
    explicit Xoshiro256pp(std::uint64_t seed) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
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

    bool operator==(const Xoshiro256pp&) const = default;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

using Engine = Xoshiro256pp;

/// A node in a tree of independent random streams.
///
/// A stream is identified by a 64-bit key. `split(i)` derives the key of the
/// i-th child, so any task can be handed its own stream from
/// (master seed, task path) without coordination. Draws depend only on the
/// path, never on which thread or shard consumes them.
class RngStream {
public:
    constexpr explicit RngStream(std::uint64_t key) noexcept : key_(key) {}

    constexpr std::uint64_t key() const noexcept { return key_; }

    RngStream split(std::uint64_t index) const noexcept;

    /// Fresh engine positioned at the start of this stream.
    Engine engine() const noexcept { return Engine(key_); }

private:
    std::uint64_t key_;
};

}  // namespace idp
