#include "ilc/bitstring.hpp"

#include <random>

#include "gtest/gtest.h"
#include "testutil.hpp"

using ilc::BitString;

TEST(bitstring, parse_and_to_string_roundtrip) {
  for (const char* s : {"0", "1", "1011", "0000000000000000",
                        "101100111000111100001111100000111111"}) {
    EXPECT_EQ(BitString::parse(s).to_string(), s);
  }
}

TEST(bitstring, position_zero_is_leftmost_and_lsb_of_first_word) {
  const BitString b = BitString::parse("1011");
  EXPECT_TRUE(b.get(0));
  EXPECT_FALSE(b.get(1));
  EXPECT_TRUE(b.get(2));
  EXPECT_TRUE(b.get(3));
  EXPECT_EQ(b.word(0), 0b1101u);  // bit p of the string at word bit p
}

TEST(bitstring, parse_rejects_garbage) {
  EXPECT_THROW(BitString::parse(""), ilc::IngestError);
  EXPECT_THROW(BitString::parse("10x1"), ilc::IngestError);
  EXPECT_THROW(BitString(0), ilc::DimensionError);
}

TEST(bitstring, from_index_orders_lexicographically) {
  BitString prev = BitString::from_index(0, 5);
  for (std::uint64_t v = 1; v < 32; ++v) {
    BitString cur = BitString::from_index(v, 5);
    EXPECT_TRUE(prev < cur) << prev.to_string() << " vs " << cur.to_string();
    EXPECT_EQ(cur.to_index(), v);
    prev = cur;
  }
  EXPECT_EQ(BitString::from_index(0b10110, 5).to_string(), "10110");
}

TEST(bitstring, lexicographic_order_spans_word_boundaries) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    BitString a = ilc::testutil::random_bits(rng, 90);
    BitString b = ilc::testutil::random_bits(rng, 90);
    EXPECT_EQ(a < b, a.to_string() < b.to_string());
  }
}

TEST(bitstring, xor_and_or_are_bitwise) {
  const BitString a = BitString::parse("1100");
  const BitString b = BitString::parse("1010");
  EXPECT_EQ((a ^ b).to_string(), "0110");
  EXPECT_EQ((a & b).to_string(), "1000");
  EXPECT_EQ((a | b).to_string(), "1110");
  EXPECT_THROW(a ^ BitString::parse("110"), ilc::DimensionError);
}

TEST(bitstring, subset_and_intersection) {
  const BitString small = BitString::parse("0100");
  const BitString big = BitString::parse("0110");
  EXPECT_TRUE(small.is_subset_of(big));
  EXPECT_FALSE(big.is_subset_of(small));
  EXPECT_TRUE(small.intersects(big));
  EXPECT_FALSE(small.intersects(BitString::parse("1010")));
}

TEST(bitstring, bytes_roundtrip_with_lsb_first_packing) {
  const BitString b = BitString::parse("100110001");  // 9 bits -> 2 bytes
  const auto bytes = b.to_bytes();
  ASSERT_EQ(bytes.size(), 2u);
  EXPECT_EQ(bytes[0], 0b00011001u);
  EXPECT_EQ(bytes[1], 0b00000001u);
  EXPECT_EQ(BitString::from_bytes(9, bytes), b);
}

TEST(bitstring, from_bytes_rejects_nonzero_padding) {
  std::vector<std::uint8_t> bytes{0xFF};
  EXPECT_THROW(BitString::from_bytes(5, bytes), ilc::FormatError);
  EXPECT_THROW(BitString::from_bytes(9, bytes), ilc::FormatError);
}

TEST(bitstring, popcount_find_first) {
  const BitString b = BitString::parse("001010");
  EXPECT_EQ(b.popcount(), 2u);
  EXPECT_EQ(b.find_first(), 2u);
  EXPECT_EQ(BitString(70).find_first(), 70u);
  EXPECT_TRUE(BitString(70).is_zero());
}
