#include "hcp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <thread>

#include "hcp/error.hpp"
#include "hcp/rates.hpp"
#include "hcp/rng.hpp"

namespace hcp {

namespace {

constexpr std::uint64_t kSearchStream = 0x534541524348ULL;
constexpr std::size_t kCensusMaxBits = 20;

struct Candidate {
    std::size_t dist;
    std::size_t i;
    std::size_t j;

    auto operator<=>(const Candidate&) const = default;
};

void keep_best(std::optional<Candidate>& best, const Candidate& c) {
    if (!best || c < *best) {
        best = c;
    }
}

Candidate ordered(std::size_t a, std::size_t b, std::size_t dist) {
    return {dist, std::min(a, b), std::max(a, b)};
}

std::size_t resolve_workers(std::size_t requested) {
    if (requested != 0) {
        return requested;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void check_dimension(std::span<const BitVector> vs, std::size_t m, const char* what) {
    for (const auto& v : vs) {
        if (v.size() != m) {
            throw DimensionError(std::string(what) + " length " + std::to_string(v.size()) + " != " +
                                 std::to_string(m));
        }
    }
}

/// Sort-and-check over precomputed keys, reusing `order` as scratch.
std::optional<Candidate> check_sorted(std::span<const BitVector> vectors, std::span<const BitVector> keys,
                                      std::vector<std::size_t>& order, bool adjacent_equal_only) {
    order.resize(keys.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return detail::compare_unchecked(keys[a], keys[b]) < 0;
    });
    std::optional<Candidate> best;
    for (std::size_t k = 1; k < order.size(); ++k) {
        const std::size_t a = order[k - 1];
        const std::size_t b = order[k];
        if (adjacent_equal_only && keys[a] != keys[b]) {
            continue;
        }
        keep_best(best, ordered(a, b, detail::hamming_unchecked(vectors[a], vectors[b])));
    }
    return best;
}

/// Per-thread state for one monochromatic trial.
class MonoTrial {
public:
    MonoTrial(const Instance& inst, const BinaryCode& code, std::size_t radius, bool adjacent_equal_only)
        : vectors_(inst.vectors()), decoder_(code, radius), keys_(inst.n()), adjacent_equal_only_(adjacent_equal_only) {}

    std::optional<Candidate> operator()(const BitVector& y) {
        for (std::size_t k = 0; k < vectors_.size(); ++k) {
            shifted_.assign_xor(y, vectors_[k]);
            decoder_(shifted_, keys_[k]);
        }
        return check_sorted(vectors_, keys_, order_, adjacent_equal_only_);
    }

    [[nodiscard]] const std::vector<BitVector>& keys() const noexcept { return keys_; }

private:
    std::span<const BitVector> vectors_;
    RadiusDecoder decoder_;
    std::vector<BitVector> keys_;
    BitVector shifted_;
    std::vector<std::size_t> order_;
    bool adjacent_equal_only_;
};

/// Per-thread state for one red/blue trial; i indexes red, j indexes blue.
class MergeTrial {
public:
    MergeTrial(std::span<const BitVector> red, std::span<const BitVector> blue, const BinaryCode& code,
               std::size_t radius, bool adjacent_equal_only)
        : red_(red), blue_(blue), decoder_(code, radius), red_keys_(red.size()), blue_keys_(blue.size()),
          adjacent_equal_only_(adjacent_equal_only) {}

    std::optional<Candidate> operator()(const BitVector& y) {
        decode_side(y, red_, red_keys_, red_order_);
        decode_side(y, blue_, blue_keys_, blue_order_);
        std::optional<Candidate> best;
        std::size_t a = 0;
        std::size_t b = 0;
        while (a < red_order_.size() && b < blue_order_.size()) {
            const std::size_t ri = red_order_[a];
            const std::size_t bi = blue_order_[b];
            const auto cmp = detail::compare_unchecked(red_keys_[ri], blue_keys_[bi]);
            if (!adjacent_equal_only_ || cmp == 0) {
                // Not ordered(): the indices live in different sets.
                keep_best(best, Candidate{detail::hamming_unchecked(red_[ri], blue_[bi]), ri, bi});
            }
            if (cmp <= 0) {
                ++a;
            } else {
                ++b;
            }
        }
        return best;
    }

private:
    void decode_side(const BitVector& y, std::span<const BitVector> side, std::vector<BitVector>& keys,
                     std::vector<std::size_t>& order) {
        for (std::size_t k = 0; k < side.size(); ++k) {
            shifted_.assign_xor(y, side[k]);
            decoder_(shifted_, keys[k]);
        }
        order.resize(side.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t z) {
            return detail::compare_unchecked(keys[x], keys[z]) < 0;
        });
    }

    std::span<const BitVector> red_;
    std::span<const BitVector> blue_;
    RadiusDecoder decoder_;
    std::vector<BitVector> red_keys_;
    std::vector<BitVector> blue_keys_;
    std::vector<std::size_t> red_order_;
    std::vector<std::size_t> blue_order_;
    BitVector shifted_;
    bool adjacent_equal_only_;
};

struct EngineOutcome {
    std::optional<Candidate> best;
    std::uint64_t trials_used = 0;
};

using ShiftFill = std::function<void(std::uint64_t start, std::size_t count, std::vector<BitVector>& out)>;

/**
 * Runs `trials` trials in blocks. Shifts for a block are produced on the
 * calling thread, evaluated by up to `workers` threads (strided), then reduced
 * in trial order so early exit happens at the same trial for any worker count.
 */
template <class MakeTrial>
EngineOutcome run_engine(std::uint64_t trials, std::size_t workers, std::optional<std::size_t> stop_at,
                         const ShiftFill& fill, MakeTrial make_trial) {
    EngineOutcome out;
    if (trials == 0) {
        return out;
    }
    workers = static_cast<std::size_t>(std::min<std::uint64_t>(workers, trials));
    const bool has_stop = stop_at.has_value();
    const std::size_t stop_value = stop_at.value_or(0);

    if (workers == 1) {
        auto trial = make_trial();
        std::vector<BitVector> shifts;
        constexpr std::size_t kBlock = 256;
        for (std::uint64_t start = 0; start < trials; start += kBlock) {
            const auto count = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, trials - start));
            fill(start, count, shifts);
            for (std::size_t k = 0; k < count; ++k) {
                if (auto c = trial(shifts[k])) {
                    keep_best(out.best, *c);
                }
                out.trials_used = start + k + 1;
                if (has_stop && out.best && out.best->dist <= stop_value) {
                    return out;
                }
            }
        }
        return out;
    }

    const std::size_t block = 64 * workers;
    std::vector<BitVector> shifts;
    std::vector<std::optional<Candidate>> results(block);
    for (std::uint64_t start = 0; start < trials; start += block) {
        const auto count = static_cast<std::size_t>(std::min<std::uint64_t>(block, trials - start));
        fill(start, count, shifts);
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        auto trial = make_trial();
                        for (std::size_t k = w; k < count; k += workers) {
                            results[k] = trial(shifts[k]);
                        }
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
        for (std::size_t k = 0; k < count; ++k) {
            if (results[k]) {
                keep_best(out.best, *results[k]);
            }
            out.trials_used = start + k + 1;
            if (has_stop && out.best && out.best->dist <= stop_value) {
                return out;
            }
        }
    }
    return out;
}

ShiftFill random_fill(std::size_t m, std::uint64_t seed) {
    return [m, seed](std::uint64_t start, std::size_t count, std::vector<BitVector>& out) {
        out.resize(count);
        for (std::size_t k = 0; k < count; ++k) {
            out[k] = trial_shift(m, seed, start + k);
        }
    };
}

PairResult to_result(const Candidate& c, Algorithm tag) {
    PairResult r;
    r.i = c.i;
    r.j = c.j;
    r.dist = c.dist;
    r.algorithm = tag;
    return r;
}

[[noreturn]] void throw_nothing_found(std::uint64_t trials) {
    throw DataError("no pair was measured in " + std::to_string(trials) +
                    " trials; disable adjacent-equal-only checking or raise the trial budget");
}

bool early_exit_default(const SolveConfig& cfg, bool fallback) { return cfg.early_exit.value_or(fallback); }

} // namespace

std::string_view algorithm_name(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::brute: return "brute";
    case Algorithm::sort_check: return "sort_check";
    case Algorithm::randomized: return "rand";
    case Algorithm::gapped: return "gapped";
    case Algorithm::deterministic: return "det";
    case Algorithm::search: return "search";
    case Algorithm::bichromatic: return "bichromatic";
    case Algorithm::lightbulb: return "lightbulb";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
    for (auto a : {Algorithm::brute, Algorithm::sort_check, Algorithm::randomized, Algorithm::gapped,
                   Algorithm::deterministic, Algorithm::search, Algorithm::bichromatic, Algorithm::lightbulb}) {
        if (algorithm_name(a) == name) {
            return a;
        }
    }
    return std::nullopt;
}

std::string_view code_kind_name(CodeKind k) noexcept { return k == CodeKind::gilbert ? "gilbert" : "concat"; }

std::optional<CodeKind> parse_code_kind(std::string_view name) noexcept {
    if (name == "gilbert") {
        return CodeKind::gilbert;
    }
    if (name == "concat") {
        return CodeKind::concat;
    }
    return std::nullopt;
}

void SolveConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw ConfigError("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
    }
    if (trial_budget && *trial_budget == 0) {
        throw ConfigError("trial budget must be positive");
    }
    if (max_table_bits > kHardMaxTableBits) {
        throw ConfigError("table budget above 2^" + std::to_string(kHardMaxTableBits));
    }
}

CodeStats code_stats(const BinaryCode& code) {
    const auto& p = code.params();
    return {code.kind(), p.block_len, p.log2_size, p.design_distance, p.min_distance, p.guaranteed_radius,
            p.covering_radius};
}

PairResult brute_force(const Instance& inst) {
    const auto& v = inst.vectors();
    std::optional<Candidate> best;
    for (std::size_t a = 0; a < v.size(); ++a) {
        for (std::size_t b = a + 1; b < v.size(); ++b) {
            const std::size_t d = detail::hamming_unchecked(v[a], v[b]);
            if (!best || d < best->dist) {
                best = Candidate{d, a, b};
            }
        }
    }
    return to_result(*best, Algorithm::brute);
}

PairResult brute_force_bichromatic(std::span<const BitVector> red, std::span<const BitVector> blue) {
    if (red.empty() || blue.empty()) {
        throw DomainError("bichromatic instance needs at least one red and one blue vector");
    }
    check_dimension(blue, red.front().size(), "blue vector");
    check_dimension(red, red.front().size(), "red vector");
    std::optional<Candidate> best;
    for (std::size_t a = 0; a < red.size(); ++a) {
        for (std::size_t b = 0; b < blue.size(); ++b) {
            const std::size_t d = detail::hamming_unchecked(red[a], blue[b]);
            if (!best || d < best->dist) {
                best = Candidate{d, a, b};
            }
        }
    }
    return to_result(*best, Algorithm::brute);
}

std::optional<PairResult> sort_and_check(const Instance& inst, std::span<const BitVector> decoded,
                                         bool adjacent_equal_only) {
    if (decoded.size() != inst.n()) {
        throw DimensionError("decoded list has " + std::to_string(decoded.size()) + " entries, expected " +
                             std::to_string(inst.n()));
    }
    check_dimension(decoded, inst.m(), "decoded vector");
    std::vector<std::size_t> order;
    if (auto c = check_sorted(inst.vectors(), decoded, order, adjacent_equal_only)) {
        auto r = to_result(*c, Algorithm::sort_check);
        r.trials_used = 1;
        return r;
    }
    return std::nullopt;
}

std::optional<PairResult> single_trial(const Instance& inst, const BinaryCode& code, std::size_t radius,
                                       const BitVector& shift, bool adjacent_equal_only) {
    if (shift.size() != inst.m() || code.params().block_len != inst.m()) {
        throw DimensionError("shift, code and instance lengths must agree");
    }
    MonoTrial trial(inst, code, radius, adjacent_equal_only);
    if (auto c = trial(shift)) {
        auto r = to_result(*c, Algorithm::sort_check);
        r.trials_used = 1;
        r.radius = radius;
        return r;
    }
    return std::nullopt;
}

std::shared_ptr<const BinaryCode> make_solver_code(std::size_t m, std::size_t design_distance, std::size_t radius,
                                                   const SolveConfig& cfg) {
    if (radius == 0) {
        return std::make_shared<IdentityCode>(m);
    }
    if (design_distance > m) {
        throw ConstructionError("no binary code of length " + std::to_string(m) + " with design distance " +
                                std::to_string(design_distance));
    }
    try {
        if (cfg.code_kind == CodeKind::gilbert) {
            if (radius > design_distance / 2) {
                throw ConstructionError("decode radius " + std::to_string(radius) +
                                        " is beyond the unique decoding radius of a design distance " +
                                        std::to_string(design_distance) + " Gilbert code");
            }
            return CodeCache::global().gilbert(m, design_distance, radius, cfg.max_table_bits);
        }
        return std::make_shared<ConcatCode>(ConcatCode::build(m, radius, design_distance));
    } catch (const DomainError& e) {
        throw ConstructionError(e.what());
    }
}

PairResult run_trials(const Instance& inst, const BinaryCode& code, std::size_t radius, std::uint64_t trials,
                      std::optional<std::size_t> stop_at, std::uint64_t seed, const SolveConfig& cfg,
                      Algorithm tag) {
    if (code.params().block_len != inst.m()) {
        throw DimensionError("code length " + std::to_string(code.params().block_len) + " != instance length " +
                             std::to_string(inst.m()));
    }
    RadiusDecoder probe(code, radius); // validates the radius before any thread starts
    const auto outcome = run_engine(trials, resolve_workers(cfg.workers), stop_at, random_fill(inst.m(), seed),
                                    [&] { return MonoTrial(inst, code, radius, cfg.adjacent_equal_only); });
    if (!outcome.best) {
        throw_nothing_found(outcome.trials_used);
    }
    auto r = to_result(*outcome.best, tag);
    r.trials_used = outcome.trials_used;
    r.trials_planned = trials;
    r.seed = seed;
    r.radius = radius;
    r.code = code_stats(code);
    return r;
}

PairResult solve_randomized(const Instance& inst, std::size_t dmin, const SolveConfig& cfg) {
    cfg.validate();
    const std::size_t m = inst.m();
    if (dmin > m) {
        throw DomainError("dmin " + std::to_string(dmin) + " exceeds the vector length " + std::to_string(m));
    }
    const std::size_t radius = cfg.radius.value_or((dmin + 1) / 2);
    const std::size_t design = std::max(dmin + 1, 2 * radius);
    const auto code = make_solver_code(m, design, radius, cfg);
    const std::uint64_t trials =
        cfg.trial_budget.value_or(rates::trial_count(m, inst.n(), code->params().log2_size, dmin, radius));
    const auto stop = early_exit_default(cfg, true) ? std::optional<std::size_t>(dmin) : std::nullopt;
    auto r = run_trials(inst, *code, radius, trials, stop, cfg.seed, cfg, Algorithm::randomized);
    r.seed = cfg.seed;
    return r;
}

PairResult solve_gapped(const Instance& inst, std::size_t dmin, std::size_t d2, const SolveConfig& cfg) {
    cfg.validate();
    if (d2 <= dmin) {
        throw DomainError("gapped solver needs dmin < d2 (dmin=" + std::to_string(dmin) + ", d2=" +
                          std::to_string(d2) + ")");
    }
    const std::size_t m = inst.m();
    if (d2 > m) {
        throw DomainError("d2 exceeds the vector length");
    }
    const std::size_t radius = cfg.radius.value_or(d2 / 2);
    const auto code = make_solver_code(m, d2 + 1, radius, cfg);
    const std::uint64_t trials =
        cfg.trial_budget.value_or(rates::gapped_trial_count(m, inst.n(), code->params().log2_size, dmin, radius));
    const auto stop = early_exit_default(cfg, true) ? std::optional<std::size_t>(dmin) : std::nullopt;
    return run_trials(inst, *code, radius, trials, stop, cfg.seed, cfg, Algorithm::gapped);
}

PairResult solve_deterministic(const Instance& inst, std::size_t dmin, const SolveConfig& cfg) {
    cfg.validate();
    if (cfg.code_kind != CodeKind::gilbert) {
        throw ConfigError("deterministic mode needs a Gilbert lookup code (covering radius is only known there)");
    }
    const std::size_t m = inst.m();
    if (m > cfg.max_table_bits) {
        throw ResourceError("deterministic mode needs a 2^" + std::to_string(m) +
                            "-entry lookup table, above the budget 2^" + std::to_string(cfg.max_table_bits) +
                            "; use the randomized solver instead");
    }
    if (dmin >= m) {
        throw ConstructionError("no Gilbert code of length " + std::to_string(m) + " with design distance " +
                                std::to_string(dmin + 1));
    }
    const std::size_t radius = cfg.radius.value_or((dmin + 1) / 2);
    std::shared_ptr<const GilbertCode> code;
    try {
        code = CodeCache::global().gilbert(m, std::max(dmin + 1, 2 * radius), radius, cfg.max_table_bits);
    } catch (const DomainError& e) {
        throw ConstructionError(e.what());
    }
    const std::size_t ball = cfg.enumeration_radius.value_or(code->covering_radius());
    if (ball > m) {
        throw ConfigError("enumeration radius exceeds m");
    }
    const std::uint64_t shifts = ball_volume(m, ball);

    auto enumerator = std::make_shared<BallEnumerator>(m, ball);
    const ShiftFill fill = [enumerator, m](std::uint64_t, std::size_t count, std::vector<BitVector>& out) {
        out.resize(count);
        for (std::size_t k = 0; k < count; ++k) {
            out[k] = BitVector(m);
            if (!enumerator->next(out[k])) {
                throw InvariantError("ball enumeration ended early");
            }
        }
    };
    const auto stop = early_exit_default(cfg, false) ? std::optional<std::size_t>(dmin) : std::nullopt;
    const auto outcome = run_engine(shifts, resolve_workers(cfg.workers), stop, fill,
                                    [&] { return MonoTrial(inst, *code, radius, cfg.adjacent_equal_only); });
    if (!outcome.best) {
        throw_nothing_found(outcome.trials_used);
    }
    auto r = to_result(*outcome.best, Algorithm::deterministic);
    r.trials_used = outcome.trials_used;
    r.trials_planned = shifts;
    r.radius = radius;
    r.code = code_stats(*code);
    return r;
}

SearchResult search_dmin(const Instance& inst, const SolveConfig& cfg) {
    cfg.validate();
    const std::size_t m = inst.m();
    SearchResult out;
    std::optional<Candidate> best;
    std::uint64_t total = 0;
    std::size_t r = 1;
    while (true) {
        if (2 * r + 1 > m) {
            // No design distance 2r+1 code fits; every pair is within 2r anyway, so finish exactly.
            const auto exact = brute_force(inst);
            keep_best(best, Candidate{exact.dist, exact.i, exact.j});
            out.steps.push_back({r, 0, best->dist});
            break;
        }
        const auto code = make_solver_code(m, 2 * r + 1, r, cfg);
        // A pass at radius r targets dmin in [ceil(2r/(1+eps)), 2r]; count for the smallest.
        const auto lowest = static_cast<std::size_t>(std::ceil(2.0 * static_cast<double>(r) / (1.0 + cfg.epsilon)));
        const std::size_t dmin_hyp = std::max(r, std::min(2 * r - 1, lowest));
        const std::uint64_t trials = cfg.trial_budget.value_or(
            rates::trial_count(m, inst.n(), code->params().log2_size, std::max<std::size_t>(dmin_hyp, 1), r));
        const auto stop = early_exit_default(cfg, false) ? std::optional<std::size_t>(2 * r) : std::nullopt;
        const std::uint64_t seed = derive_key(cfg.seed, kSearchStream, r);
        const auto outcome = run_engine(trials, resolve_workers(cfg.workers), stop, random_fill(m, seed),
                                        [&] { return MonoTrial(inst, *code, r, cfg.adjacent_equal_only); });
        if (outcome.best) {
            keep_best(best, *outcome.best);
        }
        total += outcome.trials_used;
        out.steps.push_back({r, outcome.trials_used, best ? std::optional<std::size_t>(best->dist) : std::nullopt});
        out.pair.code = code_stats(*code);
        out.pair.radius = r;
        if (best && best->dist <= 2 * r) {
            break;
        }
        r = std::max(r + 1, static_cast<std::size_t>(std::floor((1.0 + cfg.epsilon) * static_cast<double>(r))));
    }
    const auto code = out.pair.code;
    const auto radius = out.pair.radius;
    out.pair = to_result(*best, Algorithm::search);
    out.pair.code = code;
    out.pair.radius = radius;
    out.pair.trials_used = total;
    out.pair.trials_planned = total;
    out.pair.seed = cfg.seed;
    out.dmin = best->dist;
    return out;
}

std::uint64_t good_shift_census(const Instance& inst, const BinaryCode& code, std::size_t radius) {
    const std::size_t m = inst.m();
    if (m > kCensusMaxBits) {
        throw ResourceError("good-shift census is exhaustive and limited to m <= " + std::to_string(kCensusMaxBits));
    }
    if (code.params().block_len != m) {
        throw DimensionError("code length does not match the instance");
    }
    const auto target = brute_force(inst);
    MonoTrial trial(inst, code, radius, false);
    std::uint64_t good = 0;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << m); ++y) {
        (void)trial(BitVector::from_word(m, y));
        const auto& keys = trial.keys();
        if (keys[target.i] != keys[target.j]) {
            continue;
        }
        const auto sharing = std::count(keys.begin(), keys.end(), keys[target.i]);
        if (sharing == 2) {
            ++good;
        }
    }
    return good;
}

PairResult solve_bichromatic(std::span<const BitVector> red, std::span<const BitVector> blue, std::size_t dmin,
                             const SolveConfig& cfg) {
    cfg.validate();
    if (red.empty() || blue.empty()) {
        throw DomainError("bichromatic instance needs at least one red and one blue vector");
    }
    const std::size_t m = red.front().size();
    check_dimension(red, m, "red vector");
    check_dimension(blue, m, "blue vector");
    if (dmin > m) {
        throw DomainError("dmin exceeds the vector length");
    }
    const std::size_t radius = cfg.radius.value_or((dmin + 1) / 2);
    const auto code = make_solver_code(m, std::max(dmin + 1, 2 * radius), radius, cfg);
    const std::uint64_t n = std::max<std::uint64_t>(2, red.size() + blue.size());
    const std::uint64_t trials =
        cfg.trial_budget.value_or(rates::trial_count(m, n, code->params().log2_size, dmin, radius));
    const auto stop = early_exit_default(cfg, true) ? std::optional<std::size_t>(dmin) : std::nullopt;
    const auto outcome =
        run_engine(trials, resolve_workers(cfg.workers), stop, random_fill(m, cfg.seed),
                   [&] { return MergeTrial(red, blue, *code, radius, cfg.adjacent_equal_only); });
    if (!outcome.best) {
        throw_nothing_found(outcome.trials_used);
    }
    auto r = to_result(*outcome.best, Algorithm::bichromatic);
    r.trials_used = outcome.trials_used;
    r.trials_planned = trials;
    r.seed = cfg.seed;
    r.radius = radius;
    r.code = code_stats(*code);
    return r;
}

} // namespace hcp
