#include "hcp/bitvec.hpp"

#include <bit>
#include <limits>

#include "hcp/error.hpp"

namespace hcp {

namespace {

constexpr std::size_t words_for(std::size_t len) { return (len + 63) / 64; }

void check_len(std::size_t len) {
    if (len == 0 || len > BitVector::kMaxBits) {
        throw DomainError("bit vector length must be in [1, 2^20], got " + std::to_string(len));
    }
}

void check_same(const BitVector& a, const BitVector& b) {
    if (a.size() != b.size()) {
        throw DimensionError("bit vector length mismatch: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    }
}

} // namespace

BitVector::BitVector(std::size_t len) : len_(len), words_(words_for(len), 0) { check_len(len); }

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t k = 0; k < bits.size(); ++k) {
        const char c = bits[k];
        if (c == '1') {
            v.words_[k / 64] |= std::uint64_t{1} << (k % 64);
        } else if (c != '0') {
            throw ParseError(std::string("invalid bit character '") + c + "'");
        }
    }
    return v;
}

BitVector BitVector::from_bytes(std::size_t len, std::span<const std::uint8_t> bytes) {
    BitVector v(len);
    if (bytes.size() != v.num_bytes()) {
        throw DimensionError("expected " + std::to_string(v.num_bytes()) + " bytes, got " +
                             std::to_string(bytes.size()));
    }
    for (std::size_t b = 0; b < bytes.size(); ++b) {
        v.words_[b / 8] |= std::uint64_t{bytes[b]} << (8 * (b % 8));
    }
    if (len % 64 != 0 && (v.words_.back() >> (len % 64)) != 0) {
        throw ParseError("nonzero pad bits in packed vector");
    }
    return v;
}

BitVector BitVector::from_word(std::size_t len, std::uint64_t value) {
    if (len > 64) {
        throw DomainError("from_word supports at most 64 bits");
    }
    BitVector v(len);
    v.words_[0] = len == 64 ? value : value & ((std::uint64_t{1} << len) - 1);
    return v;
}

bool BitVector::get(std::size_t k) const {
    if (k >= len_) {
        throw DomainError("bit index out of range");
    }
    return (words_[k / 64] >> (k % 64)) & 1U;
}

void BitVector::set(std::size_t k, bool value) {
    if (k >= len_) {
        throw DomainError("bit index out of range");
    }
    const std::uint64_t mask = std::uint64_t{1} << (k % 64);
    if (value) {
        words_[k / 64] |= mask;
    } else {
        words_[k / 64] &= ~mask;
    }
}

void BitVector::flip(std::size_t k) {
    if (k >= len_) {
        throw DomainError("bit index out of range");
    }
    words_[k / 64] ^= std::uint64_t{1} << (k % 64);
}

std::size_t BitVector::weight() const noexcept {
    std::size_t w = 0;
    for (const auto word : words_) {
        w += static_cast<std::size_t>(std::popcount(word));
    }
    return w;
}

std::vector<std::uint8_t> BitVector::to_bytes() const {
    std::vector<std::uint8_t> out;
    out.reserve(num_bytes());
    append_bytes(out);
    return out;
}

void BitVector::append_bytes(std::vector<std::uint8_t>& out) const {
    for (std::size_t b = 0; b < num_bytes(); ++b) {
        out.push_back(static_cast<std::uint8_t>(words_[b / 8] >> (8 * (b % 8))));
    }
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t k = 0; k < len_; ++k) {
        if ((words_[k / 64] >> (k % 64)) & 1U) {
            s[k] = '1';
        }
    }
    return s;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    check_same(*this, other);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

void BitVector::assign_xor(const BitVector& a, const BitVector& b) {
    check_same(a, b);
    len_ = a.len_;
    words_.resize(a.words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] = a.words_[i] ^ b.words_[i];
    }
}

void BitVector::assign(const BitVector& other) {
    len_ = other.len_;
    words_.assign(other.words_.begin(), other.words_.end());
}

std::size_t detail::hamming_unchecked(const BitVector& a, const BitVector& b) noexcept {
    const auto wa = a.words();
    const auto wb = b.words();
    std::size_t d = 0;
    for (std::size_t i = 0; i < wa.size(); ++i) {
        d += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
    }
    return d;
}

std::strong_ordering detail::compare_unchecked(const BitVector& a, const BitVector& b) noexcept {
    const auto wa = a.words();
    const auto wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) {
        const std::uint64_t diff = wa[i] ^ wb[i];
        if (diff != 0) {
            const int t = std::countr_zero(diff);
            return ((wa[i] >> t) & 1U) ? std::strong_ordering::greater : std::strong_ordering::less;
        }
    }
    return std::strong_ordering::equal;
}

std::size_t hamming(const BitVector& a, const BitVector& b) {
    check_same(a, b);
    return detail::hamming_unchecked(a, b);
}

std::size_t weight(const BitVector& a) noexcept { return a.weight(); }

BitVector operator^(const BitVector& a, const BitVector& b) {
    BitVector out;
    out.assign_xor(a, b);
    return out;
}

BitVector bitwise_xor(const BitVector& a, const BitVector& b) { return a ^ b; }

std::strong_ordering compare(const BitVector& a, const BitVector& b) {
    check_same(a, b);
    return detail::compare_unchecked(a, b);
}

std::uint64_t ball_volume(std::size_t m, std::size_t radius) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    std::uint64_t term = 1; // C(m, w)
    for (std::size_t w = 0; w <= radius && w <= m; ++w) {
        if (w > 0) {
            // term * (m-w+1) / w is exact; guard the intermediate product.
            const std::uint64_t num = m - w + 1;
            if (term > kMax / num) {
                return kMax;
            }
            term = term * num / w;
        }
        if (total > kMax - term) {
            return kMax;
        }
        total += term;
    }
    return total;
}

BallEnumerator::BallEnumerator(std::size_t m, std::size_t radius) : m_(m), radius_(radius) {
    if (m == 0 || m > BitVector::kMaxBits) {
        throw DomainError("ball dimension must be in [1, 2^20]");
    }
    if (radius > m) {
        throw DomainError("ball radius " + std::to_string(radius) + " exceeds dimension " + std::to_string(m));
    }
}

bool BallEnumerator::next(BitVector& out) {
    if (done_) {
        return false;
    }
    if (!started_) {
        started_ = true;
        weight_ = 0;
        positions_.clear();
    } else {
        // Advance to the next combination of `weight_` positions out of m_.
        std::size_t w = weight_;
        std::size_t i = w;
        while (i > 0 && positions_[i - 1] == m_ - w + (i - 1)) {
            --i;
        }
        if (i == 0) {
            if (weight_ == radius_) {
                done_ = true;
                return false;
            }
            ++weight_;
            positions_.resize(weight_);
            for (std::size_t k = 0; k < weight_; ++k) {
                positions_[k] = k;
            }
        } else {
            ++positions_[i - 1];
            for (std::size_t k = i; k < w; ++k) {
                positions_[k] = positions_[k - 1] + 1;
            }
        }
    }
    if (out.size() != m_) {
        out = BitVector(m_);
    } else {
        out.assign(BitVector(m_));
    }
    for (const auto p : positions_) {
        out.set(p, true);
    }
    return true;
}

std::vector<BitVector> enumerate_ball(std::size_t m, std::size_t radius) {
    BallEnumerator it(m, radius);
    std::vector<BitVector> out;
    BitVector v;
    while (it.next(v)) {
        out.push_back(v);
    }
    return out;
}

} // namespace hcp
