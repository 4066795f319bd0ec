// Bit-packed linear algebra over GF(2): matrix-vector products, reduced row
// echelon form with leftmost-first pivoting, rank, affine solves, and
// deterministic preimage enumeration.
//
// Rows are packed like BitString: column c of a row lives in word c/64 at
// bit c%64, so "leftmost column" means lowest bit.
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ilc/bitstring.hpp"
#include "ilc/errors.hpp"

namespace ilc {

class GF2Matrix {
 public:
  GF2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64),
        bits_(rows * ((cols + 63) / 64), 0) {
    if (rows == 0 || cols == 0)
      throw DimensionError("matrix dimensions must be positive");
  }

  // Test/demo convenience: one "0101..." string per row.
  static GF2Matrix from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) throw DimensionError("matrix needs at least one row");
    GF2Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_)
        throw DimensionError("matrix rows differ in length");
      for (std::size_t c = 0; c < m.cols_; ++c) {
        if (rows[r][c] == '1')
          m.set(r, c, true);
        else if (rows[r][c] != '0')
          throw IngestError("matrix rows may contain only '0' and '1'");
      }
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
  }

  void set(std::size_t r, std::size_t c, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    if (v)
      bits_[r * wpr_ + (c >> 6)] |= mask;
    else
      bits_[r * wpr_ + (c >> 6)] &= ~mask;
  }

  std::span<const std::uint64_t> row_words(std::size_t r) const {
    return {bits_.data() + r * wpr_, wpr_};
  }

  BitString row(std::size_t r) const {
    BitString out(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) out.set(c, true);
    return out;
  }

  BitString matvec(const BitString& x) const {
    require_input(x);
    BitString out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      if (row_dot(r, x)) out.set(r, true);
    return out;
  }

  // Digest packed into a word, bit j = row j. Hot path for rows <= 64.
  std::uint64_t matvec_u64(const BitString& x) const {
    require_input(x);
    if (rows_ > 64)
      throw DimensionError("packed digest requires at most 64 rows");
    std::uint64_t out = 0;
    for (std::size_t r = 0; r < rows_; ++r)
      out |= std::uint64_t{row_dot(r, x)} << r;
    return out;
  }

  std::size_t rank() const;

  bool has_full_row_rank() const { return rank() == rows_; }

  friend bool operator==(const GF2Matrix& a, const GF2Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const GF2Matrix& a, const GF2Matrix& b) {
    return !(a == b);
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r) s += '\n';
      for (std::size_t c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
    }
    return s;
  }

 private:
  void require_input(const BitString& x) const {
    if (x.size() != cols_)
      throw DimensionError("input has " + std::to_string(x.size()) +
                           " bits, matrix has " + std::to_string(cols_) +
                           " columns");
  }

  std::uint64_t row_dot(std::size_t r, const BitString& x) const {
    const std::uint64_t* rw = bits_.data() + r * wpr_;
    unsigned acc = 0;
    for (std::size_t w = 0; w < wpr_; ++w)
      acc += static_cast<unsigned>(std::popcount(rw[w] & x.word(w)));
    return acc & 1u;
  }

  std::size_t rows_, cols_, wpr_;
  std::vector<std::uint64_t> bits_;
};

namespace detail {

// Reduced row echelon form of a working copy, pivots chosen leftmost-first,
// with an optional right-hand side carried through the elimination.
struct Echelon {
  std::vector<std::uint64_t> rows;       // row-major, wpr words per row
  std::vector<std::uint8_t> rhs;         // parallel rhs bits (empty if unused)
  std::vector<std::size_t> pivot_cols;   // ascending
  std::size_t wpr = 0;

  bool bit(std::size_t r, std::size_t c) const {
    return (rows[r * wpr + (c >> 6)] >> (c & 63)) & 1u;
  }
};

inline Echelon reduced_row_echelon(const GF2Matrix& m, const BitString* y) {
  Echelon e;
  e.wpr = (m.cols() + 63) / 64;
  e.rows.resize(m.rows() * e.wpr);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto src = m.row_words(r);
    std::copy(src.begin(), src.end(), e.rows.begin() + r * e.wpr);
  }
  if (y) {
    e.rhs.resize(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) e.rhs[r] = y->get(r);
  }

  auto xor_rows = [&](std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < e.wpr; ++w)
      e.rows[dst * e.wpr + w] ^= e.rows[src * e.wpr + w];
    if (!e.rhs.empty()) e.rhs[dst] ^= e.rhs[src];
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < e.wpr; ++w)
      std::swap(e.rows[a * e.wpr + w], e.rows[b * e.wpr + w]);
    if (!e.rhs.empty()) std::swap(e.rhs[a], e.rhs[b]);
  };

  std::size_t next = 0;  // next pivot row
  for (std::size_t c = 0; c < m.cols() && next < m.rows(); ++c) {
    std::size_t p = next;
    while (p < m.rows() && !e.bit(p, c)) ++p;
    if (p == m.rows()) continue;
    swap_rows(p, next);
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != next && e.bit(r, c)) xor_rows(r, next);
    e.pivot_cols.push_back(c);
    ++next;
  }
  return e;
}

}  // namespace detail

inline std::size_t GF2Matrix::rank() const {
  return detail::reduced_row_echelon(*this, nullptr).pivot_cols.size();
}

struct AffineSolution {
  BitString particular;
  // One vector per free column, ordered by increasing free-column index;
  // together they span ker(H), so the full solution set is
  // particular + span(nullspace_basis).
  std::vector<BitString> nullspace_basis;
};

inline std::optional<AffineSolution> solve_affine(const GF2Matrix& h,
                                                  const BitString& y) {
  if (y.size() != h.rows())
    throw DimensionError("target has " + std::to_string(y.size()) +
                         " bits, matrix has " + std::to_string(h.rows()) +
                         " rows");
  const auto e = detail::reduced_row_echelon(h, &y);
  const std::size_t rank = e.pivot_cols.size();
  for (std::size_t r = rank; r < h.rows(); ++r)
    if (e.rhs[r]) return std::nullopt;

  AffineSolution s{BitString(h.cols()), {}};
  for (std::size_t i = 0; i < rank; ++i)
    if (e.rhs[i]) s.particular.set(e.pivot_cols[i], true);

  s.nullspace_basis.reserve(h.cols() - rank);
  std::size_t pi = 0;
  for (std::size_t c = 0; c < h.cols(); ++c) {
    if (pi < rank && e.pivot_cols[pi] == c) {
      ++pi;
      continue;
    }
    BitString v(h.cols());
    v.set(c, true);
    for (std::size_t i = 0; i < rank; ++i)
      if (e.bit(i, c)) v.set(e.pivot_cols[i], true);
    s.nullspace_basis.push_back(std::move(v));
  }
  return s;
}

// Walks the solution set of Hx = y in a canonical order: the m-th member is
// particular + xor of basis vectors selected by the set bits of m, with
// basis vectors ordered by increasing free-column index. The order is stable
// across runs and platforms because the echelon form is deterministic.
class PreimageEnumerator {
 public:
  PreimageEnumerator(const GF2Matrix& h, const BitString& y)
      : current_(BitString(h.cols())) {
    auto s = solve_affine(h, y);
    if (!s) {
      count_ = 0;
      return;
    }
    if (s->nullspace_basis.size() > 62)
      throw EnumerationUnsupported(
          "preimage space has more than 2^62 elements");
    basis_ = std::move(s->nullspace_basis);
    current_ = std::move(s->particular);
    count_ = std::uint64_t{1} << basis_.size();
  }

  std::uint64_t count() const { return count_; }
  bool done() const { return emitted_ == count_; }

  BitString next() {
    BitString out = current_;
    ++emitted_;
    if (emitted_ < count_) {
      std::uint64_t diff = emitted_ ^ (emitted_ - 1);
      while (diff) {
        const int j = std::countr_zero(diff);
        current_ ^= basis_[static_cast<std::size_t>(j)];
        diff &= diff - 1;
      }
    }
    return out;
  }

 private:
  BitString current_;
  std::vector<BitString> basis_;
  std::uint64_t count_ = 0;
  std::uint64_t emitted_ = 0;
};

inline std::vector<BitString> enumerate_preimages(const GF2Matrix& h,
                                                  const BitString& y) {
  PreimageEnumerator en(h, y);
  std::vector<BitString> out;
  out.reserve(en.count());
  while (!en.done()) out.push_back(en.next());
  return out;
}

// Ordered tuple (h_1, ..., h_{k+1}) of digest maps. The tuple length always
// equals the per-matrix row count, so a tuple for digest width k+1 holds
// k+1 matrices of shape (k+1) x n.
class HashTuple {
 public:
  explicit HashTuple(std::vector<GF2Matrix> members)
      : members_(std::move(members)) {
    if (members_.empty()) throw DimensionError("hash tuple must be nonempty");
    const std::size_t r = members_.front().rows();
    const std::size_t c = members_.front().cols();
    for (const auto& m : members_)
      if (m.rows() != r || m.cols() != c)
        throw DimensionError("hash tuple members differ in shape");
    if (members_.size() != r)
      throw DimensionError("hash tuple length must equal digest width");
  }

  std::size_t size() const { return members_.size(); }
  std::size_t rows() const { return members_.front().rows(); }
  std::size_t cols() const { return members_.front().cols(); }
  const GF2Matrix& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<GF2Matrix>& members() const { return members_; }

  friend bool operator==(const HashTuple& a, const HashTuple& b) {
    return a.members_ == b.members_;
  }

 private:
  std::vector<GF2Matrix> members_;
};

}  // namespace ilc
