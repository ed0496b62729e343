#include "hcp/lightbulb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "hcp/error.hpp"
#include "hcp/rng.hpp"

namespace hcp::lightbulb {

namespace {

constexpr std::uint64_t kGenStream = 0x4C42474556ULL;
constexpr std::uint64_t kFlipStream = 0x4C42464C50ULL;
constexpr std::uint64_t kSampleStream = 0x4C4253414DULL;
constexpr std::uint64_t kRoundSeedStream = 0x4C42524E44ULL;

void check_rho(double rho) {
    if (!(rho > -1.0 && rho < 1.0) || rho == 0.0) {
        throw DomainError("rho must lie in (-1, 1) without 0, got " + std::to_string(rho));
    }
}

} // namespace

Instance generate(std::size_t n, double rho, std::size_t length, std::uint64_t seed) {
    if (n < 2) {
        throw DomainError("light bulb instance needs n >= 2");
    }
    check_rho(rho);
    if (length == 0 || length > BitVector::kMaxBits) {
        throw DomainError("sequence length must lie in [1, 2^20]");
    }
    std::mt19937_64 rng(derive_key(seed, kGenStream, 0));
    Instance inst;
    inst.n = n;
    inst.length = length;
    inst.rho = rho;

    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    while (b == a) {
        b = pick(rng);
    }
    inst.planted = {std::min(a, b), std::max(a, b)};

    CounterRng bits(derive_key(seed, kGenStream, 1));
    inst.sequences.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        inst.sequences.push_back(random_vector(length, bits));
    }
    std::bernoulli_distribution agree((1.0 + rho) / 2.0);
    auto& second = inst.sequences[inst.planted.second];
    const auto& first = inst.sequences[inst.planted.first];
    for (std::size_t p = 0; p < length; ++p) {
        second.set(p, agree(rng) ? first.get(p) : !first.get(p));
    }
    return inst;
}

std::size_t sample_dimension(std::size_t n, double rho) {
    if (n < 2) {
        throw DomainError("sample dimension needs n >= 2");
    }
    if (rho == 0.0 || !std::isfinite(rho) || std::abs(rho) > 1.0) {
        throw DomainError("sample dimension needs 0 < |rho| <= 1");
    }
    const double m = 4.0 * std::numbers::ln2 * std::log2(static_cast<double>(n)) / (rho * rho);
    return static_cast<std::size_t>(std::ceil(m - 1e-9));
}

std::size_t distance_threshold(std::size_t m, double rho) {
    return static_cast<std::size_t>(std::floor((1.0 - std::abs(rho)) * static_cast<double>(m) / 2.0));
}

FlipResult flip_negative(const Instance& inst, std::uint64_t seed) {
    if (!(inst.rho < 0.0)) {
        throw DomainError("flip_negative needs rho < 0");
    }
    std::mt19937_64 rng(derive_key(seed, kFlipStream, 0));
    std::vector<std::size_t> all(inst.n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<std::size_t> chosen;
    std::sample(all.begin(), all.end(), std::back_inserter(chosen), inst.n / 2, rng);

    FlipResult out{inst, false};
    std::vector<bool> flipped(inst.n, false);
    for (const auto k : chosen) {
        flipped[k] = true;
        auto& s = out.instance.sequences[k];
        for (std::size_t p = 0; p < s.size(); ++p) {
            s.flip(p);
        }
    }
    out.separated = flipped[inst.planted.first] != flipped[inst.planted.second];
    if (out.separated) {
        out.instance.rho = -inst.rho;
    }
    return out;
}

bool Result::recovered(const Instance& inst) const noexcept {
    return pair.i == inst.planted.first && pair.j == inst.planted.second;
}

Result solve(const Instance& inst, const Config& cfg) {
    if (!(inst.rho > 0.0)) {
        throw DomainError("solve needs rho > 0; apply flip_negative first");
    }
    if (inst.sequences.size() != inst.n || inst.n < 2) {
        throw DomainError("light bulb instance is inconsistent");
    }
    const std::size_t m = cfg.sample_bits.value_or(sample_dimension(inst.n, inst.rho));
    if (m == 0 || inst.length < m) {
        throw DataError("sequences have " + std::to_string(inst.length) + " bits but each round samples " +
                        std::to_string(m));
    }
    const std::size_t rounds = cfg.rounds.value_or(static_cast<std::size_t>(
        std::ceil(cfg.repetition * std::log2(static_cast<double>(inst.n)) - 1e-9)));
    if (rounds == 0) {
        throw ConfigError("light bulb solver needs at least one round");
    }

    Result out;
    out.m = m;
    out.threshold = distance_threshold(m, inst.rho);
    std::vector<std::size_t> positions(inst.length);
    std::iota(positions.begin(), positions.end(), std::size_t{0});

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> votes;
    std::uint64_t total_trials = 0;
    for (std::size_t round = 0; round < rounds; ++round) {
        std::mt19937_64 rng(derive_key(cfg.solve.seed, kSampleStream, round));
        std::vector<std::size_t> picked;
        picked.reserve(m);
        std::sample(positions.begin(), positions.end(), std::back_inserter(picked), m, rng);

        std::vector<BitVector> sampled;
        sampled.reserve(inst.n);
        for (const auto& s : inst.sequences) {
            BitVector v(m);
            for (std::size_t k = 0; k < m; ++k) {
                v.set(k, s.get(picked[k]));
            }
            sampled.push_back(std::move(v));
        }
        const hcp::Instance sample(std::move(sampled));

        SolveConfig round_cfg = cfg.solve;
        round_cfg.seed = derive_key(cfg.solve.seed, kRoundSeedStream, round);
        const auto r = solve_randomized(sample, out.threshold, round_cfg);
        total_trials += r.trials_used;
        ++votes[{r.i, r.j}];
        out.rounds.push_back({r.i, r.j, r.dist, r.trials_used,
                              hamming(sample[inst.planted.first], sample[inst.planted.second])});
    }

    // std::map iterates in (i, j) order, so strict > keeps the smallest pair on ties.
    std::pair<std::size_t, std::size_t> winner{0, 1};
    for (const auto& [pair, count] : votes) {
        if (count > out.votes) {
            out.votes = count;
            winner = pair;
        }
    }
    out.pair.i = winner.first;
    out.pair.j = winner.second;
    out.pair.dist = hamming(inst.sequences[winner.first], inst.sequences[winner.second]);
    out.pair.trials_used = total_trials;
    out.pair.trials_planned = total_trials;
    out.pair.algorithm = Algorithm::lightbulb;
    out.pair.seed = cfg.solve.seed;
    out.pair.radius = (out.threshold + 1) / 2;
    return out;
}

} // namespace hcp::lightbulb
