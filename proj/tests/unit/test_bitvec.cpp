#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hcp/bitvec.hpp"
#include "hcp/error.hpp"

using hcp::BitVector;

namespace {

std::size_t naive_hamming(const std::string& a, const std::string& b) {
    std::size_t d = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        d += a[k] != b[k] ? 1 : 0;
    }
    return d;
}

std::string random_bits(std::mt19937_64& rng, std::size_t m) {
    std::string s(m, '0');
    for (auto& c : s) {
        c = (rng() & 1U) ? '1' : '0';
    }
    return s;
}

} // namespace

TEST(BitVector, StringRoundTrip) {
    const auto v = BitVector::from_string("1011001");
    EXPECT_EQ(v.size(), 7U);
    EXPECT_TRUE(v.get(0));
    EXPECT_FALSE(v.get(1));
    EXPECT_EQ(v.to_string(), "1011001");
    EXPECT_EQ(v.weight(), 4U);
}

TEST(BitVector, RejectsBadLengthsAndCharacters) {
    EXPECT_THROW(BitVector(0), hcp::DomainError);
    EXPECT_THROW(BitVector(BitVector::kMaxBits + 1), hcp::DomainError);
    EXPECT_THROW((void)BitVector::from_string("01x1"), hcp::Error);
    EXPECT_THROW((void)BitVector::from_string(""), hcp::Error);
}

TEST(BitVector, BytePackingIsLsbFirst) {
    const auto v = BitVector::from_string("1000000001");
    const auto bytes = v.to_bytes();
    ASSERT_EQ(bytes.size(), 2U);
    EXPECT_EQ(bytes[0], 0x01);
    EXPECT_EQ(bytes[1], 0x02);
    EXPECT_EQ(BitVector::from_bytes(10, bytes), v);
}

TEST(BitVector, FromBytesRejectsPadBits) {
    const std::vector<std::uint8_t> bytes{0x00, 0x04};
    EXPECT_THROW((void)BitVector::from_bytes(10, bytes), hcp::Error);
    const std::vector<std::uint8_t> short_bytes{0x00};
    EXPECT_THROW((void)BitVector::from_bytes(10, short_bytes), hcp::Error);
}

TEST(BitVector, FromWordMatchesBits) {
    const auto v = BitVector::from_word(5, 0b10110);
    EXPECT_EQ(v.to_string(), "01101");
    EXPECT_EQ(v.low_word(), 0b10110U);
}

TEST(BitVector, HammingOfEqualLengthVectors) {
    EXPECT_EQ(hcp::hamming(BitVector::from_string("0000"), BitVector::from_string("1111")), 4U);
    EXPECT_EQ(hcp::hamming(BitVector::from_string("1010"), BitVector::from_string("1010")), 0U);
}

TEST(BitVector, HammingLengthMismatchThrows) {
    EXPECT_THROW((void)hcp::hamming(BitVector(5), BitVector(6)), hcp::DimensionError);
    EXPECT_THROW((void)hcp::bitwise_xor(BitVector(5), BitVector(6)), hcp::DimensionError);
    EXPECT_THROW((void)hcp::compare(BitVector(5), BitVector(6)), hcp::DimensionError);
}

TEST(BitVector, HammingMatchesNaiveAcrossWordBoundaries) {
    std::mt19937_64 rng(11);
    for (const std::size_t m : {1U, 63U, 64U, 65U, 127U, 128U, 200U, 1000U}) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto a = random_bits(rng, m);
            const auto b = random_bits(rng, m);
            EXPECT_EQ(hcp::hamming(BitVector::from_string(a), BitVector::from_string(b)), naive_hamming(a, b));
        }
    }
}

TEST(BitVector, XorAndWeight) {
    const auto a = BitVector::from_string("1100110011");
    const auto b = BitVector::from_string("1010101010");
    const auto c = a ^ b;
    EXPECT_EQ(c.to_string(), "0110011001");
    EXPECT_EQ(hcp::weight(c), hcp::hamming(a, b));
    BitVector d = a;
    d ^= b;
    EXPECT_EQ(d, c);
}

TEST(BitVector, CompareIsBitLexicographic) {
    // The first differing index decides; 0 sorts first.
    EXPECT_TRUE(hcp::compare(BitVector::from_string("0111"), BitVector::from_string("1000")) < 0);
    EXPECT_TRUE(hcp::compare(BitVector::from_string("1001"), BitVector::from_string("1000")) > 0);
    EXPECT_TRUE(hcp::compare(BitVector::from_string("1001"), BitVector::from_string("1001")) == 0);
}

TEST(BitVector, CompareMatchesStringOrderOnRandomVectors) {
    std::mt19937_64 rng(5);
    for (const std::size_t m : {7U, 64U, 70U, 130U}) {
        for (int rep = 0; rep < 50; ++rep) {
            const auto a = random_bits(rng, m);
            const auto b = random_bits(rng, m);
            const auto expect = a <=> b;
            EXPECT_EQ(hcp::compare(BitVector::from_string(a), BitVector::from_string(b)), expect);
        }
    }
}

TEST(Ball, VolumeCounts) {
    EXPECT_EQ(hcp::ball_volume(3, 1), 4U);
    EXPECT_EQ(hcp::ball_volume(10, 2), 1U + 10U + 45U);
    EXPECT_EQ(hcp::ball_volume(8, 8), 256U);
    EXPECT_EQ(hcp::ball_volume(8, 20), 256U);
    EXPECT_EQ(hcp::ball_volume(200, 100), UINT64_MAX);
}

TEST(Ball, EnumerationOrderSmallCase) {
    const auto ball = hcp::enumerate_ball(3, 1);
    ASSERT_EQ(ball.size(), 4U);
    EXPECT_EQ(ball[0].to_string(), "000");
    EXPECT_EQ(ball[1].to_string(), "100");
    EXPECT_EQ(ball[2].to_string(), "010");
    EXPECT_EQ(ball[3].to_string(), "001");
}

TEST(Ball, EnumerationIsCompleteAndDistinct) {
    for (std::size_t m = 1; m <= 10; ++m) {
        for (std::size_t r = 0; r <= m; ++r) {
            const auto ball = hcp::enumerate_ball(m, r);
            EXPECT_EQ(ball.size(), hcp::ball_volume(m, r));
            std::set<std::uint64_t> seen;
            std::size_t last_weight = 0;
            for (const auto& v : ball) {
                EXPECT_LE(v.weight(), r);
                EXPECT_GE(v.weight(), last_weight);
                last_weight = v.weight();
                seen.insert(v.low_word());
            }
            EXPECT_EQ(seen.size(), ball.size());
        }
    }
}
