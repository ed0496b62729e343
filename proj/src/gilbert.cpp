#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "hcp/codes.hpp"
#include "hcp/error.hpp"

namespace hcp {

namespace {

constexpr std::uint8_t kUnvisited = 0xFF;

std::uint32_t reverse_low_bits(std::uint32_t v, std::size_t m) {
    v = ((v >> 1) & 0x55555555U) | ((v & 0x55555555U) << 1);
    v = ((v >> 2) & 0x33333333U) | ((v & 0x33333333U) << 2);
    v = ((v >> 4) & 0x0F0F0F0FU) | ((v & 0x0F0F0F0FU) << 4);
    v = ((v >> 8) & 0x00FF00FFU) | ((v & 0x00FF00FFU) << 8);
    v = (v >> 16) | (v << 16);
    return v >> (32 - m);
}

// Every m-bit mask of weight <= d, as integers.
std::vector<std::uint32_t> ball_masks(std::size_t m, std::size_t d) {
    std::vector<std::uint32_t> masks;
    BallEnumerator it(m, d);
    BitVector v;
    while (it.next(v)) {
        masks.push_back(static_cast<std::uint32_t>(v.low_word()));
    }
    return masks;
}

// Multi-source BFS from the codewords. dist[x] = distance to the code;
// owner[x] = smallest index among the nearest codewords.
void nearest_codeword_bfs(std::size_t m, const std::vector<std::uint32_t>& values, std::vector<std::uint32_t>& owner,
                          std::vector<std::uint8_t>& dist) {
    const std::size_t n = std::size_t{1} << m;
    owner.assign(n, 0);
    dist.assign(n, kUnvisited);
    std::vector<std::uint32_t> frontier;
    std::vector<std::uint32_t> next;
    frontier.reserve(values.size());
    for (std::uint32_t i = 0; i < values.size(); ++i) {
        dist[values[i]] = 0;
        owner[values[i]] = i;
        frontier.push_back(values[i]);
    }
    std::uint8_t level = 0;
    while (!frontier.empty()) {
        next.clear();
        const auto nl = static_cast<std::uint8_t>(level + 1);
        for (const auto u : frontier) {
            const std::uint32_t own = owner[u];
            for (std::size_t b = 0; b < m; ++b) {
                const std::uint32_t v = u ^ (std::uint32_t{1} << b);
                if (dist[v] == kUnvisited) {
                    dist[v] = nl;
                    owner[v] = own;
                    next.push_back(v);
                } else if (dist[v] == nl && own < owner[v]) {
                    owner[v] = own;
                }
            }
        }
        frontier.swap(next);
        ++level;
    }
}

} // namespace

std::optional<BitVector> BinaryCode::decode(const BitVector& x) const {
    BitVector out;
    if (decode_into(x, out)) {
        return out;
    }
    return std::nullopt;
}

RadiusDecoder::RadiusDecoder(const BinaryCode& code, std::size_t radius) : code_(&code), radius_(radius) {
    if (radius > code.params().guaranteed_radius) {
        throw ConfigError("decode radius " + std::to_string(radius) + " exceeds the code's guaranteed radius " +
                          std::to_string(code.params().guaranteed_radius));
    }
}

void RadiusDecoder::operator()(const BitVector& x, BitVector& out) const {
    if (x.size() != code_->params().block_len) {
        throw DimensionError("received word length " + std::to_string(x.size()) + " != block length " +
                             std::to_string(code_->params().block_len));
    }
    if (code_->decode_into(x, scratch_) && detail::hamming_unchecked(x, scratch_) <= radius_) {
        out.assign(scratch_);
    } else {
        out.assign(x);
    }
}

BitVector RadiusDecoder::operator()(const BitVector& x) const {
    BitVector out;
    (*this)(x, out);
    return out;
}

IdentityCode::IdentityCode(std::size_t m) {
    if (m == 0 || m > BitVector::kMaxBits) {
        throw DomainError("identity code needs 1 <= m <= 2^20");
    }
    params_.block_len = m;
    params_.log2_size = static_cast<double>(m);
    if (m < 64) {
        params_.size = std::uint64_t{1} << m;
    }
    params_.design_distance = 1;
    params_.min_distance = 1;
    params_.guaranteed_radius = 0;
    params_.covering_radius = 0;
}

bool IdentityCode::decode_into(const BitVector& x, BitVector& out) const {
    out.assign(x);
    return true;
}

BitVector dec_with_radius(const BinaryCode& code, std::size_t radius, const BitVector& x) {
    return RadiusDecoder(code, radius)(x);
}

GilbertCode GilbertCode::build(std::size_t m, std::size_t d, std::size_t radius, std::size_t max_table_bits) {
    if (m == 0 || d == 0 || d > m) {
        throw DomainError("Gilbert code needs 1 <= d <= m (m=" + std::to_string(m) + ", d=" + std::to_string(d) + ")");
    }
    if (max_table_bits > kHardMaxTableBits) {
        throw ResourceError("table budget above 2^" + std::to_string(kHardMaxTableBits) + " is not supported");
    }
    if (m > max_table_bits) {
        throw ResourceError("Gilbert lookup table for m=" + std::to_string(m) + " exceeds the budget of 2^" +
                            std::to_string(max_table_bits) + " entries");
    }
    if (radius > d) {
        throw DomainError("lookup radius " + std::to_string(radius) + " exceeds d=" + std::to_string(d));
    }

    GilbertCode code;
    code.m_ = m;
    code.d_ = d;
    code.radius_ = radius;

    const std::size_t n = std::size_t{1} << m;
    std::vector<std::uint64_t> removed((n + 63) / 64, 0);
    auto is_removed = [&](std::uint32_t x) { return (removed[x / 64] >> (x % 64)) & 1U; };

    // Small balls: mark B(x, d) directly. Large balls: few codewords, so test
    // each candidate against the code instead.
    const std::uint64_t vol = ball_volume(m, d);
    const bool mark_balls = vol <= std::max<std::uint64_t>(n / 16, 4096);
    std::vector<std::uint32_t> masks;
    if (mark_balls) {
        masks = ball_masks(m, d);
    }

    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint32_t x = reverse_low_bits(static_cast<std::uint32_t>(i), m);
        if (mark_balls) {
            if (is_removed(x)) {
                continue;
            }
            for (const auto mask : masks) {
                const std::uint32_t y = x ^ mask;
                removed[y / 64] |= std::uint64_t{1} << (y % 64);
            }
        } else {
            bool free = true;
            for (const auto c : code.values_) {
                if (static_cast<std::size_t>(std::popcount(c ^ x)) <= d) {
                    free = false;
                    break;
                }
            }
            if (!free) {
                continue;
            }
        }
        code.values_.push_back(x);
    }

    std::vector<std::uint32_t> owner;
    std::vector<std::uint8_t> dist;
    nearest_codeword_bfs(m, code.values_, owner, dist);
    code.finish(owner, dist);
    return code;
}

void GilbertCode::finish(const std::vector<std::uint32_t>& owner, const std::vector<std::uint8_t>& dist) {
    const std::size_t n = std::size_t{1} << m_;
    codewords_.clear();
    codewords_.reserve(values_.size());
    for (const auto v : values_) {
        codewords_.push_back(BitVector::from_word(m_, v));
    }
    covering_radius_ = 0;
    for (const auto dx : dist) {
        covering_radius_ = std::max<std::size_t>(covering_radius_, dx);
    }
    if (!owner.empty()) {
        if (values_.size() <= 0xFFFE) {
            narrow_.assign(n, static_cast<std::uint16_t>(kNarrowSentinel));
            wide_.clear();
            for (std::size_t x = 0; x < n; ++x) {
                if (dist[x] <= radius_) {
                    narrow_[x] = static_cast<std::uint16_t>(owner[x]);
                }
            }
        } else {
            wide_.assign(n, kWideSentinel);
            narrow_.clear();
            for (std::size_t x = 0; x < n; ++x) {
                if (dist[x] <= radius_) {
                    wide_[x] = owner[x];
                }
            }
        }
    }

    params_.block_len = m_;
    params_.size = values_.size();
    params_.log2_size = std::log2(static_cast<double>(values_.size()));
    params_.design_distance = d_;
    params_.min_distance = d_ + 1;
    params_.guaranteed_radius = std::min(radius_, d_ / 2);
    params_.covering_radius = covering_radius_;
}

GilbertCode GilbertCode::from_parts(std::size_t m, std::size_t d, std::size_t radius,
                                    std::vector<std::uint32_t> codeword_values, std::vector<std::uint32_t> entries) {
    if (m == 0 || m > kHardMaxTableBits || d == 0 || d > m || radius > d) {
        throw ParseError("invalid Gilbert code header (m=" + std::to_string(m) + ", d=" + std::to_string(d) +
                         ", radius=" + std::to_string(radius) + ")");
    }
    const std::size_t n = std::size_t{1} << m;
    if (entries.size() != n) {
        throw ParseError("lookup table has " + std::to_string(entries.size()) + " entries, expected " +
                         std::to_string(n));
    }
    if (codeword_values.empty()) {
        throw ParseError("code has no codewords");
    }
    for (const auto v : codeword_values) {
        if (v >= n) {
            throw ParseError("codeword outside F_2^m");
        }
    }
    GilbertCode code;
    code.m_ = m;
    code.d_ = d;
    code.radius_ = radius;
    code.values_ = std::move(codeword_values);
    const bool wide = code.values_.size() > 0xFFFE;
    const std::uint32_t sentinel = wide ? kWideSentinel : kNarrowSentinel;
    for (const auto e : entries) {
        if (e != sentinel && e >= code.values_.size()) {
            throw ParseError("lookup entry references a missing codeword");
        }
    }
    std::vector<std::uint32_t> owner;
    std::vector<std::uint8_t> dist;
    nearest_codeword_bfs(m, code.values_, owner, dist);
    // Every entry must name a codeword within the radius, and a sentinel must mean none exists.
    for (std::size_t x = 0; x < n; ++x) {
        const auto e = entries[x];
        const bool ok = e == sentinel ? dist[x] > radius
                                      : static_cast<std::size_t>(std::popcount(x ^ code.values_[e])) <= radius;
        if (!ok) {
            throw ParseError("lookup entry " + std::to_string(x) + " disagrees with the codewords");
        }
    }
    code.finish({}, dist);
    if (wide) {
        code.wide_ = std::move(entries);
    } else {
        code.narrow_.resize(n);
        for (std::size_t x = 0; x < n; ++x) {
            code.narrow_[x] = static_cast<std::uint16_t>(entries[x]);
        }
    }
    return code;
}

std::uint32_t GilbertCode::entry(std::uint64_t x) const {
    if (x >= (std::uint64_t{1} << m_)) {
        throw DomainError("lookup index outside F_2^m");
    }
    return wide_entries() ? wide_[x] : narrow_[x];
}

std::optional<std::uint32_t> GilbertCode::lookup(std::uint64_t x) const {
    const std::uint32_t e = entry(x);
    if (e == sentinel()) {
        return std::nullopt;
    }
    return e;
}

std::optional<std::uint32_t> GilbertCode::decode_index(const BitVector& x) const {
    if (x.size() != m_) {
        throw DimensionError("received word length " + std::to_string(x.size()) + " != m=" + std::to_string(m_));
    }
    return lookup(x.low_word());
}

bool GilbertCode::decode_into(const BitVector& x, BitVector& out) const {
    if (x.size() != m_) {
        throw DimensionError("received word length " + std::to_string(x.size()) + " != m=" + std::to_string(m_));
    }
    const std::uint64_t key = x.low_word();
    const std::uint32_t e = wide_entries() ? wide_[key] : narrow_[key];
    if (e == sentinel()) {
        return false;
    }
    out.assign(codewords_[e]);
    return true;
}

std::shared_ptr<const GilbertCode> CodeCache::gilbert(std::size_t m, std::size_t d, std::size_t radius,
                                                      std::size_t max_table_bits) {
    if (m > max_table_bits) {
        throw ResourceError("Gilbert lookup table for m=" + std::to_string(m) + " exceeds the budget of 2^" +
                            std::to_string(max_table_bits) + " entries; use the randomized solver with --code concat");
    }
    const auto key = std::make_tuple(m, d, radius);
    {
        std::lock_guard lock(mutex_);
        if (auto it = codes_.find(key); it != codes_.end()) {
            return it->second;
        }
    }
    auto code = std::make_shared<const GilbertCode>(GilbertCode::build(m, d, radius, max_table_bits));
    std::lock_guard lock(mutex_);
    return codes_.try_emplace(key, std::move(code)).first->second;
}

CodeCache& CodeCache::global() {
    static CodeCache cache;
    return cache;
}

} // namespace hcp
