#include "ilc/gf2.hpp"

#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "testutil.hpp"

using ilc::BitString;
using ilc::GF2Matrix;
using ilc::HashTuple;
namespace tu = ilc::testutil;

namespace {

// All matrices of a given shape, for exhaustive checks with rows*cols <= 20.
GF2Matrix matrix_from_mask(std::size_t rows, std::size_t cols,
                           std::uint64_t mask) {
  GF2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if ((mask >> (r * cols + c)) & 1u) m.set(r, c, true);
  return m;
}

}  // namespace

TEST(gf2, matvec_projection_example) {
  const auto h = GF2Matrix::from_rows({"1000", "0100"});
  EXPECT_EQ(h.matvec(BitString::parse("1011")).to_string(), "10");
}

TEST(gf2, matvec_zero_map_example) {
  const GF2Matrix h(2, 4);
  EXPECT_EQ(h.matvec(BitString::parse("1111")).to_string(), "00");
}

TEST(gf2, matvec_matches_dot_product_oracle) {
  // Frozen case: rows (110),(011) applied to 111 gives parity 0 in each row.
  const auto h = GF2Matrix::from_rows({"110", "011"});
  const auto x = BitString::parse("111");
  EXPECT_EQ(tu::oracle_matvec(h, x).to_string(), "00");
  EXPECT_EQ(h.matvec(x).to_string(), "00");

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = tu::random_matrix(rng, 1 + rng() % 9, 1 + rng() % 80);
    const auto v = tu::random_bits(rng, m.cols());
    EXPECT_EQ(m.matvec(v), tu::oracle_matvec(m, v));
    if (m.rows() <= 64) {
      BitString packed(m.rows());
      const std::uint64_t d = m.matvec_u64(v);
      for (std::size_t r = 0; r < m.rows(); ++r)
        if ((d >> r) & 1u) packed.set(r, true);
      EXPECT_EQ(packed, m.matvec(v));
    }
  }
}

TEST(gf2, matvec_dimension_mismatch) {
  const auto h = GF2Matrix::from_rows({"1000", "0100"});
  EXPECT_THROW(h.matvec(BitString::parse("101")), ilc::DimensionError);
}

TEST(gf2, matvec_is_linear) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = tu::random_matrix(rng, 1 + rng() % 10, 1 + rng() % 40);
    const auto x = tu::random_bits(rng, m.cols());
    const auto y = tu::random_bits(rng, m.cols());
    EXPECT_EQ(m.matvec(x ^ y), m.matvec(x) ^ m.matvec(y));
  }
}

TEST(gf2, rank_examples) {
  EXPECT_EQ(GF2Matrix(2, 4).rank(), 0u);
  EXPECT_EQ(GF2Matrix::from_rows({"1000", "0100"}).rank(), 2u);
  // Frozen via span counting: two equal nonzero rows span {000, 110}.
  const auto dup = GF2Matrix::from_rows({"110", "110"});
  EXPECT_EQ(tu::oracle_rank(dup), 1u);
  EXPECT_EQ(dup.rank(), 1u);
}

TEST(gf2, rank_agrees_with_span_counting_exhaustively) {
  // Every matrix with rows*cols <= 12, a handful of shapes.
  const std::pair<std::size_t, std::size_t> shapes[] = {
      {1, 1}, {1, 6}, {2, 2}, {2, 3}, {3, 3}, {2, 6}, {3, 4}, {4, 3}, {6, 2}};
  for (auto [rows, cols] : shapes) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (rows * cols));
         ++mask) {
      const auto m = matrix_from_mask(rows, cols, mask);
      ASSERT_EQ(m.rank(), tu::oracle_rank(m))
          << rows << "x" << cols << " mask=" << mask;
    }
  }
}

TEST(gf2, full_rank_count_matches_product_formula) {
  // Number of full-row-rank (k+1) x n matrices is prod_j (2^n - 2^j).
  const std::pair<std::size_t, std::size_t> shapes[] = {
      {1, 6}, {2, 2}, {2, 3}, {2, 4}, {3, 3}, {2, 5}, {3, 4}, {2, 6}};
  for (auto [rows, cols] : shapes) {
    std::uint64_t expected = 1;
    for (std::size_t j = 0; j < rows; ++j)
      expected *= (std::uint64_t{1} << cols) - (std::uint64_t{1} << j);
    std::uint64_t counted = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (rows * cols));
         ++mask)
      if (matrix_from_mask(rows, cols, mask).rank() == rows) ++counted;
    EXPECT_EQ(counted, expected) << rows << "x" << cols;
  }
}

TEST(gf2, collision_probability_is_exactly_two_to_minus_rows) {
  // For fixed x != y, the number of matrices with Hx = Hy is exactly
  // 2^(rows*cols) / 2^rows. Exhaustive over (n,k) in {(2,0),(3,0),(3,1)}.
  const std::pair<std::size_t, std::size_t> cases[] = {{2, 0}, {3, 0}, {3, 1}};
  for (auto [n, k] : cases) {
    const std::size_t rows = k + 1;
    for (std::uint64_t xi = 0; xi < (std::uint64_t{1} << n); ++xi) {
      for (std::uint64_t yi = xi + 1; yi < (std::uint64_t{1} << n); ++yi) {
        const auto x = BitString::from_index(xi, n);
        const auto y = BitString::from_index(yi, n);
        std::uint64_t collisions = 0;
        const std::uint64_t total = std::uint64_t{1} << (rows * n);
        for (std::uint64_t mask = 0; mask < total; ++mask) {
          const auto h = matrix_from_mask(rows, n, mask);
          if (h.matvec(x) == h.matvec(y)) ++collisions;
        }
        ASSERT_EQ(collisions, total >> rows)
            << "n=" << n << " k=" << k << " x=" << x.to_string()
            << " y=" << y.to_string();
      }
    }
  }
}

TEST(gf2, solve_affine_projection_example) {
  const auto h = GF2Matrix::from_rows({"1000", "0100"});
  const auto s = ilc::solve_affine(h, BitString::parse("10"));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->particular.to_string(), "1000");
  ASSERT_EQ(s->nullspace_basis.size(), 2u);
  EXPECT_EQ(s->nullspace_basis[0].to_string(), "0010");
  EXPECT_EQ(s->nullspace_basis[1].to_string(), "0001");
}

TEST(gf2, solve_affine_unsolvable_zero_map) {
  const GF2Matrix zero(1, 3);
  EXPECT_FALSE(ilc::solve_affine(zero, BitString::parse("1")).has_value());
}

TEST(gf2, solve_affine_matches_exhaustive_oracle) {
  // Frozen case from the exhaustive oracle: rows (110),(011), target 01 has
  // exactly the two solutions 001 and 110.
  const auto h = GF2Matrix::from_rows({"110", "011"});
  const auto y = BitString::parse("01");
  const auto expected = tu::oracle_preimages(h, y);
  ASSERT_EQ(expected.size(), 2u);
  EXPECT_EQ(expected[0].to_string(), "001");
  EXPECT_EQ(expected[1].to_string(), "110");

  const auto s = ilc::solve_affine(h, y);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->nullspace_basis.size(), 1u);
  for (const auto& v : ilc::enumerate_preimages(h, y))
    EXPECT_EQ(h.matvec(v), y);
}

TEST(gf2, solve_affine_dimension_mismatch) {
  const auto h = GF2Matrix::from_rows({"110", "011"});
  EXPECT_THROW(ilc::solve_affine(h, BitString::parse("011")),
               ilc::DimensionError);
}

TEST(gf2, preimage_enumeration_examples) {
  const auto h = GF2Matrix::from_rows({"1000", "0100"});
  const auto got = ilc::enumerate_preimages(h, BitString::parse("10"));
  ASSERT_EQ(got.size(), 4u);
  // Canonical order: coefficient counter over the basis (0010, 0001).
  EXPECT_EQ(got[0].to_string(), "1000");
  EXPECT_EQ(got[1].to_string(), "1010");
  EXPECT_EQ(got[2].to_string(), "1001");
  EXPECT_EQ(got[3].to_string(), "1011");

  const GF2Matrix zero(2, 4);
  EXPECT_EQ(ilc::enumerate_preimages(zero, BitString::parse("00")).size(), 16u);
  EXPECT_TRUE(ilc::enumerate_preimages(zero, BitString::parse("01")).empty());
}

TEST(gf2, preimage_enumeration_matches_exhaustive_oracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t cols = 2 + rng() % 9;
    const std::size_t rows = 1 + rng() % cols;
    const auto h = tu::random_matrix(rng, rows, cols);
    const auto y = tu::random_bits(rng, rows);
    auto got = ilc::enumerate_preimages(h, y);
    auto expected = tu::oracle_preimages(h, y);
    std::sort(got.begin(), got.end());
    ASSERT_EQ(got, expected);  // oracle scans indices in sorted order
  }
}

TEST(gf2, preimage_sets_partition_the_cube) {
  // For full-row-rank shapes, the digest classes partition {0,1}^n into
  // 2^rows classes of exactly 2^(n-rows) elements each.
  std::mt19937_64 rng(19);
  const std::pair<std::size_t, std::size_t> shapes[] = {
      {4, 12}, {3, 10}, {8, 8}};
  for (auto [rows, n] : shapes) {
    GF2Matrix h(1, 1);
    do {
      h = tu::random_matrix(rng, rows, n);
    } while (h.rank() != rows);

    std::vector<std::uint64_t> class_size(std::size_t{1} << rows, 0);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
      ++class_size[h.matvec_u64(BitString::from_index(v, n))];
    for (auto s : class_size)
      ASSERT_EQ(s, std::uint64_t{1} << (n - rows));

    // Spot-check one class against the enumerator.
    const auto y = BitString::from_index(1, rows);
    EXPECT_EQ(ilc::PreimageEnumerator(h, y).count(),
              std::uint64_t{1} << (n - rows));
  }
}

TEST(gf2, hash_tuple_shape_checks) {
  std::vector<GF2Matrix> two{GF2Matrix(2, 4), GF2Matrix(2, 4)};
  EXPECT_EQ(HashTuple(two).rows(), 2u);
  EXPECT_THROW(HashTuple(std::vector<GF2Matrix>{GF2Matrix(2, 4)}),
               ilc::DimensionError);
  std::vector<GF2Matrix> mixed{GF2Matrix(2, 4), GF2Matrix(2, 5)};
  EXPECT_THROW(HashTuple(mixed), ilc::DimensionError);
}
