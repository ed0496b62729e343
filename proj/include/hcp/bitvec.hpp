#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hcp {

/**
 * Packed binary vector of fixed length m (1 <= m <= 2^20).
 *
 * Bit k lives in 64-bit word k/64 at position k%64. The byte view produced by
 * to_bytes() places bit k at byte k/8, position k%8 (LSB first), which is the
 * packing used by every file format in this project. Bits past m-1 are kept
 * zero so equality of the word arrays is equality of vectors.
 */
class BitVector {
public:
    static constexpr std::size_t kMaxBits = std::size_t{1} << 20;

    BitVector() = default;
    /// All-zero vector of `len` bits.
    explicit BitVector(std::size_t len);

    /// Parses '0'/'1' characters; character i is bit i.
    static BitVector from_string(std::string_view bits);
    /// Reads ceil(len/8) bytes in the canonical packing. Nonzero pad bits are rejected.
    static BitVector from_bytes(std::size_t len, std::span<const std::uint8_t> bytes);
    /// Low `len` bits of `value` (len <= 64); bit k of the vector is bit k of value.
    static BitVector from_word(std::size_t len, std::uint64_t value);

    [[nodiscard]] std::size_t size() const noexcept { return len_; }
    [[nodiscard]] std::size_t num_bytes() const noexcept { return (len_ + 7) / 8; }

    [[nodiscard]] bool get(std::size_t k) const;
    void set(std::size_t k, bool value);
    void flip(std::size_t k);

    [[nodiscard]] std::size_t weight() const noexcept;

    [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }
    /// First 64 bits as an integer (bit k -> bit k). Used as a table index when m <= 64.
    [[nodiscard]] std::uint64_t low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

    [[nodiscard]] std::vector<std::uint8_t> to_bytes() const;
    void append_bytes(std::vector<std::uint8_t>& out) const;
    [[nodiscard]] std::string to_string() const;

    BitVector& operator^=(const BitVector& other);
    /// *this = a ^ b, reusing storage.
    void assign_xor(const BitVector& a, const BitVector& b);
    /// *this = other, reusing storage.
    void assign(const BitVector& other);

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Number of coordinates where a and b differ. Throws DimensionError on length mismatch.
[[nodiscard]] std::size_t hamming(const BitVector& a, const BitVector& b);
[[nodiscard]] std::size_t weight(const BitVector& a) noexcept;
[[nodiscard]] BitVector operator^(const BitVector& a, const BitVector& b);
/// Componentwise sum mod 2.
[[nodiscard]] BitVector bitwise_xor(const BitVector& a, const BitVector& b);

/// Bit-lexicographic order: the first differing index decides, a 0 there sorts first.
[[nodiscard]] std::strong_ordering compare(const BitVector& a, const BitVector& b);

struct BitLess {
    bool operator()(const BitVector& a, const BitVector& b) const { return compare(a, b) < 0; }
};

namespace detail {
// No length check; callers guarantee equal lengths.
std::size_t hamming_unchecked(const BitVector& a, const BitVector& b) noexcept;
std::strong_ordering compare_unchecked(const BitVector& a, const BitVector& b) noexcept;
} // namespace detail

/// |B(0^m, r)| = sum_{w<=r} C(m, w), saturating at UINT64_MAX.
[[nodiscard]] std::uint64_t ball_volume(std::size_t m, std::size_t radius);

/**
 * Enumerates B(0^m, radius) by increasing weight. Within one weight the
 * support sets are produced in lexicographic order of their sorted position
 * lists, so for m=3, r=1 the order is 000, 100, 010, 001 (bit 0 written first).
 */
class BallEnumerator {
public:
    BallEnumerator(std::size_t m, std::size_t radius);

    /// Writes the next vector into `out`; returns false when exhausted.
    bool next(BitVector& out);
    [[nodiscard]] std::size_t current_weight() const noexcept { return weight_; }

private:
    std::size_t m_;
    std::size_t radius_;
    std::size_t weight_ = 0;
    bool started_ = false;
    bool done_ = false;
    std::vector<std::size_t> positions_;
};

/// Collects the whole ball; intended for small m.
[[nodiscard]] std::vector<BitVector> enumerate_ball(std::size_t m, std::size_t radius);

} // namespace hcp
