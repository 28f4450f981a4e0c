#include "idp/rng.hpp"

namespace idp {

namespace {

// SplitMix64 output function applied to a counter.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) noexcept {
    // Never all zero: mix64 is a bijection over consecutive counters.
    for (auto& word : state_) {
        word = mix64(seed);
        seed += 0x9e3779b97f4a7c15ULL;
    }
}

RngStream RngStream::split(std::uint64_t index) const noexcept {
    return RngStream(mix64(key_ ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

}  // namespace idp
