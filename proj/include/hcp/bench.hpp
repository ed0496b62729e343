#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hcp/solver.hpp"

namespace hcp::bench {

/**
 * Grid of (solver, n, m, delta) cells. dmin = round(delta * m); planted
 * instances use d2 = dmin + 1 (dmin + 2 for the gapped solver).
 */
struct Spec {
    std::vector<std::string> solvers{"rand", "det"};
    std::vector<std::size_t> ns{32};
    std::vector<std::size_t> ms{12};
    std::vector<double> deltas{0.1};
    std::size_t reps = 3;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::optional<bool> early_exit;
    /// Brute-force verification is skipped above this n.
    std::size_t brute_max_n = 4096;
};

/// Parses "key=v1,v2;key=v" with keys solvers, n, m, delta, reps, seed, workers, early_exit.
[[nodiscard]] Spec parse_spec(std::string_view text);

struct Row {
    std::string solver;
    std::size_t n = 0;
    std::size_t m = 0;
    double delta = 0.0;
    std::size_t dmin = 0;
    std::size_t runs = 0;
    /// Runs checked against brute force and how many matched its distance.
    std::size_t checked = 0;
    std::size_t matched = 0;
    /// Median over runs.
    double median_ms = 0.0;
    std::uint64_t median_trials_used = 0;
    std::uint64_t median_trials_planned = 0;
    /// True when every run used exactly the planned number of trials.
    bool trials_match_plan = true;
    std::string error;

    [[nodiscard]] std::optional<double> success_rate() const noexcept;
};

/// Runs every cell; failures are recorded per cell, never thrown.
[[nodiscard]] std::vector<Row> run(const Spec& spec);

/// Tab-separated table with a header line.
[[nodiscard]] std::string format(const std::vector<Row>& rows);

} // namespace hcp::bench
