#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "hcp/codes.hpp"
#include "hcp/error.hpp"

namespace hcp {

namespace {

std::uint32_t read_bits(const BitVector& x, std::size_t offset, std::size_t len) {
    const auto words = x.words();
    std::uint32_t v = 0;
    for (std::size_t k = 0; k < len; ++k) {
        const std::size_t pos = offset + k;
        v |= static_cast<std::uint32_t>((words[pos / 64] >> (pos % 64)) & 1U) << k;
    }
    return v;
}

void write_bits(BitVector& x, std::size_t offset, std::size_t len, std::uint32_t v) {
    for (std::size_t k = 0; k < len; ++k) {
        if ((v >> k) & 1U) {
            x.set(offset + k, true);
        }
    }
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

} // namespace

std::size_t concat_guaranteed_radius(std::size_t outer_distance, std::size_t inner_radius) {
    return ceil_div(outer_distance, 2) * (inner_radius + 1) - 1;
}

ConcatCode::ConcatCode(ReedSolomon outer, std::shared_ptr<const GilbertCode> inner, std::size_t block_len)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
    if (!inner_) {
        throw DomainError("concatenated code needs an inner code");
    }
    if (inner_->size() < outer_.field().order()) {
        throw ConstructionError("inner code has K2=" + std::to_string(inner_->size()) + " < q=" +
                                std::to_string(outer_.field().order()));
    }
    if (block_len < coded_bits()) {
        throw DomainError("block length " + std::to_string(block_len) + " shorter than m1*m2=" +
                          std::to_string(coded_bits()));
    }
    const std::size_t d1 = outer_.min_distance();
    params_.block_len = block_len;
    params_.log2_size = static_cast<double>(outer_.dimension() * outer_.field().degree());
    if (params_.log2_size < 64) {
        params_.size = std::uint64_t{1} << static_cast<unsigned>(params_.log2_size);
    }
    params_.design_distance = d1 * inner_->params().min_distance;
    params_.min_distance = params_.design_distance;
    params_.guaranteed_radius = concat_guaranteed_radius(d1, inner_->params().guaranteed_radius);
}

BitVector ConcatCode::encode(std::span<const gf::Elem> msg) const {
    const auto symbols = outer_.encode(msg);
    BitVector out(params_.block_len);
    const std::size_t m2 = inner_->m();
    for (std::size_t b = 0; b < symbols.size(); ++b) {
        write_bits(out, b * m2, m2, inner_->codeword_value(symbols[b]));
    }
    return out;
}

bool ConcatCode::decode_into(const BitVector& x, BitVector& out) const {
    if (x.size() != params_.block_len) {
        throw DimensionError("received word length " + std::to_string(x.size()) + " != block length " +
                             std::to_string(params_.block_len));
    }
    const std::size_t m2 = inner_->m();
    const std::uint32_t q = outer_.field().order();
    std::vector<gf::Elem> symbols(outer_.length());
    for (std::size_t b = 0; b < symbols.size(); ++b) {
        const auto idx = inner_->lookup(read_bits(x, b * m2, m2));
        // Undecodable blocks and codewords outside the symbol image both become symbol 0.
        symbols[b] = (idx && *idx < q) ? *idx : 0;
    }
    const auto msg = outer_.decode(symbols);
    if (!msg) {
        return false;
    }
    BitVector cw = encode(*msg);
    if (detail::hamming_unchecked(cw, x) > params_.guaranteed_radius) {
        return false;
    }
    out = std::move(cw);
    return true;
}

ConcatCode ConcatCode::build(std::size_t m, std::size_t required_radius, std::optional<std::size_t> required_distance,
                             ConcatLimits limits) {
    if (m == 0 || 2 * required_radius >= m) {
        throw DomainError("concatenated code needs required_radius < m/2 (m=" + std::to_string(m) +
                          ", radius=" + std::to_string(required_radius) + ")");
    }
    const std::size_t need_dist = required_distance.value_or(2 * required_radius + 1);

    struct Choice {
        std::size_t m2 = 0, d2 = 0, m1 = 0, k1 = 0;
        unsigned t = 0;
        std::size_t log2k = 0;
    };
    std::optional<Choice> best;
    auto better = [](const Choice& a, const Choice& b) {
        if (a.log2k != b.log2k) {
            return a.log2k > b.log2k;
        }
        if (a.m1 * a.m2 != b.m1 * b.m2) {
            return a.m1 * a.m2 > b.m1 * b.m2;
        }
        return std::tie(a.m2, a.t, a.d2) < std::tie(b.m2, b.t, b.d2);
    };

    auto& cache = CodeCache::global();
    for (std::size_t m2 = 1; m2 <= std::min(limits.max_inner_bits, m); ++m2) {
        for (std::size_t d2 = 1; d2 <= m2; ++d2) {
            const auto inner = cache.gilbert(m2, d2, d2 / 2, limits.max_inner_bits);
            const std::size_t k2 = inner->size();
            const std::size_t rho2 = inner->params().guaranteed_radius;
            const auto t_max = static_cast<unsigned>(
                std::min<std::size_t>(limits.max_field_degree, static_cast<std::size_t>(std::floor(std::log2(k2)))));
            for (unsigned t = 2; t <= t_max; ++t) {
                const std::size_t q = std::size_t{1} << t;
                const std::size_t m1 = std::min(m / m2, q - 1);
                if (m1 == 0) {
                    continue;
                }
                // ceil(d1/2) blocks of rho2+1 errors must exceed the required radius.
                const std::size_t bad_blocks = ceil_div(required_radius + 1, rho2 + 1);
                const std::size_t d1 =
                    std::max({std::size_t{1}, 2 * bad_blocks - 1, ceil_div(need_dist, inner->params().min_distance)});
                if (d1 > m1) {
                    continue;
                }
                const Choice c{m2, d2, m1, m1 - d1 + 1, t, (m1 - d1 + 1) * t};
                if (!best || better(c, *best)) {
                    best = c;
                }
            }
        }
    }
    if (!best) {
        throw ConstructionError("no concatenated code of length <= " + std::to_string(m) + " with guaranteed radius " +
                                std::to_string(required_radius) + " and distance " + std::to_string(need_dist) +
                                " exists within inner length <= " + std::to_string(limits.max_inner_bits));
    }
    return ConcatCode(ReedSolomon(best->t, best->m1, best->k1),
                      cache.gilbert(best->m2, best->d2, best->d2 / 2, limits.max_inner_bits), m);
}

} // namespace hcp
