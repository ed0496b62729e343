#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hcp/bitvec.hpp"
#include "hcp/solver.hpp"

namespace hcp::lightbulb {

struct Instance {
    std::size_t n = 0;
    std::size_t length = 0;
    double rho = 0.0;
    std::vector<BitVector> sequences;
    /// Harness-only metadata; solver paths never read it.
    std::pair<std::size_t, std::size_t> planted{0, 1};
};

/// All bits uniform except the planted pair, whose bits agree with probability (1 + rho)/2.
[[nodiscard]] Instance generate(std::size_t n, double rho, std::size_t length, std::uint64_t seed);

/// ceil(4 ln2 log2(n) / rho^2).
[[nodiscard]] std::size_t sample_dimension(std::size_t n, double rho);

/// floor((1 - |rho|) m / 2), the expected planted distance on m sampled bits.
[[nodiscard]] std::size_t distance_threshold(std::size_t m, double rho);

struct FlipResult {
    Instance instance;
    /// Exactly one planted sequence was complemented, so the pair is now positively correlated.
    bool separated = false;
};

/**
 * Complements n/2 sequences chosen at random. When the planted pair is
 * separated the result carries rho = |rho|; otherwise rho stays negative.
 */
[[nodiscard]] FlipResult flip_negative(const Instance& inst, std::uint64_t seed);

struct Config {
    /// rounds = ceil(repetition * log2 n) unless `rounds` is set.
    double repetition = 3.0;
    std::optional<std::size_t> rounds;
    /// Overrides sample_dimension.
    std::optional<std::size_t> sample_bits;
    SolveConfig solve;
};

struct Round {
    std::size_t i = 0;
    std::size_t j = 0;
    /// Distance on the sampled bits.
    std::size_t sampled_dist = 0;
    std::uint64_t trials_used = 0;
    /// Harness view: planted distance on this round's sample.
    std::size_t planted_sampled_dist = 0;
};

struct Result {
    /// Majority pair; dist is its full-length Hamming distance.
    PairResult pair;
    std::size_t votes = 0;
    std::size_t m = 0;
    std::size_t threshold = 0;
    std::vector<Round> rounds;
    [[nodiscard]] bool recovered(const Instance& inst) const noexcept;
};

/**
 * Each round samples m bit positions without replacement, then runs
 * solve_randomized with dmin = d_t; the most frequent pair wins (ties go to
 * the smaller index pair). Requires rho > 0 and length >= m.
 */
[[nodiscard]] Result solve(const Instance& inst, const Config& cfg = {});

} // namespace hcp::lightbulb
