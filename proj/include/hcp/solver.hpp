#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcp/bitvec.hpp"
#include "hcp/codes.hpp"
#include "hcp/instance.hpp"

namespace hcp {

enum class Algorithm { brute, sort_check, randomized, gapped, deterministic, search, bichromatic, lightbulb };

/// Short tag used in reports and on the command line ("brute", "rand", "det", ...).
[[nodiscard]] std::string_view algorithm_name(Algorithm a) noexcept;
[[nodiscard]] std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

enum class CodeKind { gilbert, concat };

[[nodiscard]] std::string_view code_kind_name(CodeKind k) noexcept;
[[nodiscard]] std::optional<CodeKind> parse_code_kind(std::string_view name) noexcept;

struct SolveConfig {
    /// Decode radius; each solver has its own default.
    std::optional<std::size_t> radius;
    CodeKind code_kind = CodeKind::gilbert;
    /// Replaces the formula-derived trial count.
    std::optional<std::uint64_t> trial_budget;
    std::uint64_t seed = 0;
    /// 0 means one per available processor.
    std::size_t workers = 0;
    /// Radius growth factor for search_dmin, in (0, 1].
    double epsilon = 1.0;
    /// Stop once a pair at distance <= dmin is seen. Unset: on for rand/gapped/bichromatic, off otherwise.
    std::optional<bool> early_exit;
    /// Only measure adjacent pairs whose decoded keys are equal.
    bool adjacent_equal_only = false;
    std::size_t max_table_bits = kDefaultMaxTableBits;
    /// Ball radius for solve_deterministic; defaults to the code's covering radius.
    std::optional<std::size_t> enumeration_radius;

    void validate() const;
};

struct CodeStats {
    std::string kind;
    std::size_t block_len = 0;
    double log2_size = 0.0;
    std::size_t design_distance = 0;
    std::size_t min_distance = 0;
    std::size_t guaranteed_radius = 0;
    std::optional<std::size_t> covering_radius;

    friend bool operator==(const CodeStats&, const CodeStats&) = default;
};

[[nodiscard]] CodeStats code_stats(const BinaryCode& code);

struct PairResult {
    /// i < j, except for bichromatic results where i indexes red and j indexes blue.
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t dist = 0;
    std::uint64_t trials_used = 0;
    Algorithm algorithm = Algorithm::brute;
    std::optional<std::uint64_t> seed;

    std::uint64_t trials_planned = 0;
    std::optional<std::size_t> radius;
    std::optional<CodeStats> code;

    friend bool operator==(const PairResult&, const PairResult&) = default;
};

/// Exact O(m n^2) minimum; ties go to the smallest (i, j).
[[nodiscard]] PairResult brute_force(const Instance& inst);
/// Exact minimum over red x blue; i indexes red, j indexes blue.
[[nodiscard]] PairResult brute_force_bichromatic(std::span<const BitVector> red, std::span<const BitVector> blue);

/**
 * Stable-sorts indices by the decoded keys and measures the original
 * distance of every adjacent pair (only equal-key pairs when
 * `adjacent_equal_only`). Returns the best by (dist, i, j), or nullopt if
 * nothing was measured.
 */
[[nodiscard]] std::optional<PairResult> sort_and_check(const Instance& inst, std::span<const BitVector> decoded,
                                                       bool adjacent_equal_only = false);

/// One trial: decode every y ^ x_j with Dec(code, radius, .) and sort-and-check.
[[nodiscard]] std::optional<PairResult> single_trial(const Instance& inst, const BinaryCode& code, std::size_t radius,
                                                     const BitVector& shift, bool adjacent_equal_only = false);

/**
 * Code used by the trial loop for a given design distance and decode radius.
 * Radius 0 needs no decoding and yields the identity code. Infeasible
 * parameters raise ConstructionError; an oversized lookup table raises ResourceError.
 */
[[nodiscard]] std::shared_ptr<const BinaryCode> make_solver_code(std::size_t m, std::size_t design_distance,
                                                                 std::size_t radius, const SolveConfig& cfg);

/**
 * Shared randomized trial loop. Trial t uses trial_shift(m, seed, t); the
 * reduction is in trial order, so the result does not depend on the worker
 * count. With `stop_at`, the loop ends after the first trial whose running
 * best is <= *stop_at.
 */
[[nodiscard]] PairResult run_trials(const Instance& inst, const BinaryCode& code, std::size_t radius,
                                    std::uint64_t trials, std::optional<std::size_t> stop_at, std::uint64_t seed,
                                    const SolveConfig& cfg, Algorithm tag);

/**
 * Random-shift solver with a design distance dmin+1 code and radius
 * ceil(dmin/2) (equal to floor(dmin/2) for even dmin).
 */
[[nodiscard]] PairResult solve_randomized(const Instance& inst, std::size_t dmin, const SolveConfig& cfg = {});

/// Radius floor(d2/2), design distance d2+1 code, gapped trial count. Requires dmin < d2.
[[nodiscard]] PairResult solve_gapped(const Instance& inst, std::size_t dmin, std::size_t d2,
                                      const SolveConfig& cfg = {});

/// Enumerates every shift in B(0, R), R = covering radius of the Gilbert code. Gilbert codes only.
[[nodiscard]] PairResult solve_deterministic(const Instance& inst, std::size_t dmin, const SolveConfig& cfg = {});

struct SearchStep {
    std::size_t radius = 0;
    std::uint64_t trials = 0;
    /// Running best after this step.
    std::optional<std::size_t> best_dist;

    friend bool operator==(const SearchStep&, const SearchStep&) = default;
};

struct SearchResult {
    std::size_t dmin = 0;
    PairResult pair;
    std::vector<SearchStep> steps;

    friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/**
 * Unknown dmin: radius r = 1, then max(r+1, floor((1+eps) r)), each pass
 * with a design distance 2r+1 code and radius r, until the best distance
 * found is <= 2r. Once 2r+1 exceeds m no such code exists and the search
 * finishes with an exact pass.
 */
[[nodiscard]] SearchResult search_dmin(const Instance& inst, const SolveConfig& cfg = {});

/**
 * Counts the shifts y in F_2^m for which the brute-force closest pair shares
 * a decoded key that no third vector has. Requires m <= 20.
 */
[[nodiscard]] std::uint64_t good_shift_census(const Instance& inst, const BinaryCode& code, std::size_t radius);

/// Random-shift solver for red x blue: both sides decoded, sorted, merged; every merge comparison is measured.
[[nodiscard]] PairResult solve_bichromatic(std::span<const BitVector> red, std::span<const BitVector> blue,
                                           std::size_t dmin, const SolveConfig& cfg = {});

} // namespace hcp
