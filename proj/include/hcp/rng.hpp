#pragma once

#include <cstddef>
#include <cstdint>

#include "hcp/bitvec.hpp"

namespace hcp {

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent 64-bit key from (seed, stream, index).
[[nodiscard]] constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
    return mix64(mix64(seed ^ mix64(stream)) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

/// Counter-based stream: word k of key K is mix64(K + k * golden). Satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept { return mix64(key_ + 0x9E3779B97F4A7C15ULL * counter_++); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Uniform vector of F_2^m drawn from the stream.
[[nodiscard]] BitVector random_vector(std::size_t m, CounterRng& rng);
/// Shift vector of trial `trial` under `seed`; identical regardless of which worker draws it.
[[nodiscard]] BitVector trial_shift(std::size_t m, std::uint64_t seed, std::uint64_t trial);

} // namespace hcp
