// Fixed-length binary strings packed into 64-bit words.
//
// Bit position 0 is the leftmost character of the written string and maps to
// the least significant bit of the first word. Serialized to bytes, position
// p lives in byte p/8 at bit p%8, so the on-disk layout is little-endian in
// both byte and bit order. All bits past the logical length are kept zero.
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ilc/errors.hpp"

namespace ilc {

class BitString {
 public:
  explicit BitString(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {
    if (len == 0) throw DimensionError("BitString length must be positive");
  }

  static BitString parse(std::string_view text) {
    if (text.empty()) throw IngestError("empty bit string");
    BitString out(text.size());
    for (std::size_t p = 0; p < text.size(); ++p) {
      if (text[p] == '1') {
        out.set(p, true);
      } else if (text[p] != '0') {
        throw IngestError("bit string may contain only '0' and '1': \"" +
                          std::string(text) + "\"");
      }
    }
    return out;
  }

  // Maps an integer to the length-len string whose leftmost character is the
  // most significant bit of `value`, so increasing values enumerate strings
  // in lexicographic order. Only defined for len <= 64.
  static BitString from_index(std::uint64_t value, std::size_t len) {
    if (len > 64) throw DimensionError("from_index supports at most 64 bits");
    if (len < 64 && (value >> len) != 0)
      throw DimensionError("index does not fit in the requested length");
    BitString out(len);
    for (std::size_t p = 0; p < len; ++p)
      if ((value >> (len - 1 - p)) & 1u) out.set(p, true);
    return out;
  }

  std::uint64_t to_index() const {
    if (len_ > 64) throw DimensionError("to_index supports at most 64 bits");
    std::uint64_t v = 0;
    for (std::size_t p = 0; p < len_; ++p)
      if (get(p)) v |= std::uint64_t{1} << (len_ - 1 - p);
    return v;
  }

  std::size_t size() const { return len_; }
  std::size_t word_count() const { return words_.size(); }
  std::uint64_t word(std::size_t i) const { return words_[i]; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool get(std::size_t p) const {
    return (words_[p >> 6] >> (p & 63)) & 1u;
  }

  void set(std::size_t p, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (p & 63);
    if (v)
      words_[p >> 6] |= mask;
    else
      words_[p >> 6] &= ~mask;
  }

  void flip(std::size_t p) { words_[p >> 6] ^= std::uint64_t{1} << (p & 63); }

  bool is_zero() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // Index of the lowest set bit, or size() if none.
  std::size_t find_first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return len_;
  }

  BitString& operator^=(const BitString& o) {
    require_same_len(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  BitString& operator&=(const BitString& o) {
    require_same_len(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  BitString& operator|=(const BitString& o) {
    require_same_len(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }
  friend BitString operator&(BitString a, const BitString& b) { return a &= b; }
  friend BitString operator|(BitString a, const BitString& b) { return a |= b; }

  // Removes every position set in `o`.
  BitString& clear_bits_of(const BitString& o) {
    require_same_len(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  bool is_subset_of(const BitString& o) const {
    require_same_len(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const BitString& o) const {
    require_same_len(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.len_ == b.len_ && a.words_ == b.words_;
  }
  friend bool operator!=(const BitString& a, const BitString& b) {
    return !(a == b);
  }

  // Lexicographic order of the written strings. Within a word the earliest
  // differing position is the lowest differing bit; the string with a 0
  // there is smaller.
  friend bool operator<(const BitString& a, const BitString& b) {
    const std::size_t common = std::min(a.words_.size(), b.words_.size());
    for (std::size_t i = 0; i < common; ++i) {
      const std::uint64_t diff = a.words_[i] ^ b.words_[i];
      if (diff) {
        const int low = std::countr_zero(diff);
        return ((a.words_[i] >> low) & 1u) == 0;
      }
    }
    return a.len_ < b.len_;
  }

  std::string to_string() const {
    std::string s(len_, '0');
    for (std::size_t p = 0; p < len_; ++p)
      if (get(p)) s[p] = '1';
    return s;
  }

  std::vector<std::uint8_t> to_bytes() const {
    std::vector<std::uint8_t> out((len_ + 7) / 8, 0);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = static_cast<std::uint8_t>(words_[i / 8] >> ((i % 8) * 8));
    return out;
  }

  static BitString from_bytes(std::size_t len, std::span<const std::uint8_t> bytes) {
    BitString out(len);
    if (bytes.size() != (len + 7) / 8)
      throw FormatError("byte buffer does not match bit length");
    for (std::size_t i = 0; i < bytes.size(); ++i)
      out.words_[i / 8] |= std::uint64_t{bytes[i]} << ((i % 8) * 8);
    const std::size_t tail = len % 64;
    if (tail != 0) {
      const std::uint64_t mask = ~std::uint64_t{0} >> (64 - tail);
      if (out.words_.back() & ~mask)
        throw FormatError("nonzero padding bits past the bit length");
    }
    return out;
  }

  struct Hasher {
    std::size_t operator()(const BitString& b) const noexcept {
      std::uint64_t h = 0xcbf29ce484222325ull ^ b.len_;
      for (auto w : b.words_) {
        h ^= w;
        h *= 0x100000001b3ull;
      }
      return static_cast<std::size_t>(h);
    }
  };

 private:
  void require_same_len(const BitString& o) const {
    if (len_ != o.len_)
      throw DimensionError("bit strings differ in length: " +
                           std::to_string(len_) + " vs " +
                           std::to_string(o.len_));
  }

  std::size_t len_;
  std::vector<std::uint64_t> words_;
};

}  // namespace ilc
