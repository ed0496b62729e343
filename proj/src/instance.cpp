#include "hcp/instance.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "hcp/error.hpp"
#include "hcp/rng.hpp"

namespace hcp {

BitVector random_vector(std::size_t m, CounterRng& rng) {
    BitVector v(m);
    for (std::size_t k = 0; k < m; k += 64) {
        std::uint64_t word = rng();
        const std::size_t take = std::min<std::size_t>(64, m - k);
        for (std::size_t b = 0; b < take; ++b) {
            if ((word >> b) & 1U) {
                v.set(k + b, true);
            }
        }
    }
    return v;
}

BitVector trial_shift(std::size_t m, std::uint64_t seed, std::uint64_t trial) {
    CounterRng rng(derive_key(seed, 0x5348494654ULL, trial));
    return random_vector(m, rng);
}

Instance::Instance(std::vector<BitVector> vectors, std::optional<PlantedInfo> planted)
    : vectors_(std::move(vectors)), planted_(planted) {
    if (vectors_.size() < 2) {
        throw DomainError("an instance needs at least two vectors");
    }
    const std::size_t m = vectors_.front().size();
    for (const auto& v : vectors_) {
        if (v.size() != m) {
            throw DimensionError("instance vectors have different lengths (" + std::to_string(m) + " vs " +
                                 std::to_string(v.size()) + ")");
        }
    }
    if (planted_) {
        if (planted_->i >= planted_->j || planted_->j >= vectors_.size()) {
            throw DomainError("planted indices must satisfy i < j < n");
        }
    }
}

GeneratedInstance generate_planted(const PlantedSpec& spec) {
    const std::size_t d2 = spec.d2.value_or(spec.dmin + 1);
    if (spec.n < 2) {
        throw DomainError("planted instance needs n >= 2");
    }
    if (spec.m == 0 || spec.dmin > spec.m) {
        throw DomainError("planted instance needs dmin <= m");
    }
    if (d2 <= spec.dmin || d2 > spec.m) {
        throw DomainError("planted instance needs dmin < d2 <= m");
    }

    std::mt19937_64 rng(mix64(spec.seed));
    CounterRng bits(derive_key(spec.seed, 0x47454EULL, 0));

    std::vector<std::size_t> slots(spec.n);
    std::iota(slots.begin(), slots.end(), 0);
    std::shuffle(slots.begin(), slots.end(), rng);
    const std::size_t pi = std::min(slots[0], slots[1]);
    const std::size_t pj = std::max(slots[0], slots[1]);

    std::vector<BitVector> placed;
    placed.reserve(spec.n);
    BitVector a = random_vector(spec.m, bits);
    BitVector b = a;
    std::vector<std::size_t> positions(spec.m);
    std::iota(positions.begin(), positions.end(), 0);
    std::shuffle(positions.begin(), positions.end(), rng);
    for (std::size_t k = 0; k < spec.dmin; ++k) {
        b.flip(positions[k]);
    }
    placed.push_back(a);
    placed.push_back(b);

    std::uint64_t retries = 0;
    while (placed.size() < spec.n) {
        bool accepted = false;
        for (std::size_t attempt = 0; attempt < spec.max_attempts; ++attempt) {
            BitVector cand = random_vector(spec.m, bits);
            const bool far = std::all_of(placed.begin(), placed.end(),
                                         [&](const BitVector& p) { return hamming(p, cand) >= d2; });
            if (far) {
                placed.push_back(std::move(cand));
                accepted = true;
                break;
            }
            ++retries;
        }
        if (!accepted) {
            throw DataError("could not place vector " + std::to_string(placed.size()) + " of " +
                            std::to_string(spec.n) + " at distance >= " + std::to_string(d2) + " after " +
                            std::to_string(spec.max_attempts) + " attempts");
        }
    }

    // placed[0], placed[1] are the planted pair; the rest fill the other slots in order.
    std::vector<BitVector> vectors(spec.n);
    vectors[pi] = placed[0];
    vectors[pj] = placed[1];
    std::size_t next = 2;
    for (std::size_t k = 0; k < spec.n; ++k) {
        if (k != pi && k != pj) {
            vectors[k] = std::move(placed[next++]);
        }
    }
    return {Instance(std::move(vectors), PlantedInfo{pi, pj, spec.dmin}), retries};
}

} // namespace hcp
