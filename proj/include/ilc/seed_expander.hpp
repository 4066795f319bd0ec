// Deterministic expansion of short integer seeds into hash tuples.
//
// The bit stream is part of the on-disk contract and must never change:
// starting from state = seed * 0x9E3779B97F4A7C15 XOR (n << 32) XOR k, each
// splitmix64 step advances the state by the golden-ratio increment and mixes
// it through two xor-multiply rounds. Matrices are filled row-major, matrix
// by matrix, taking bits LSB-first from successive 64-bit outputs.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ilc/errors.hpp"
#include "ilc/gf2.hpp"

namespace ilc {

inline constexpr std::uint64_t kSplitMixIncrement = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t kDefaultSeedSpace = std::uint64_t{1} << 16;
inline constexpr std::uint64_t kMaxSeedSpace = std::uint64_t{1} << 32;
inline constexpr std::size_t kDefaultScanCap = 24;

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += kSplitMixIncrement;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// A seed index inside a power-of-two search space. Only the value feeds the
// expander; the space bounds searches and is recorded for reporting.
struct Seed {
  std::uint64_t value = 0;
  std::uint64_t space = kDefaultSeedSpace;

  Seed() = default;
  Seed(std::uint64_t v, std::uint64_t sp) : value(v), space(sp) {
    validate_space(sp);
    if (v >= sp)
      throw ConfigError("seed value " + std::to_string(v) +
                        " outside seed space " + std::to_string(sp));
  }

  static void validate_space(std::uint64_t sp) {
    if (sp == 0 || (sp & (sp - 1)) != 0 || sp > kMaxSeedSpace)
      throw ConfigError("seed space must be a power of two up to 2^32, got " +
                        std::to_string(sp));
  }
};

inline std::uint64_t expander_initial_state(std::uint64_t seed_value,
                                            std::size_t n, std::size_t k) {
  return seed_value * kSplitMixIncrement ^
         (static_cast<std::uint64_t>(n) << 32) ^ static_cast<std::uint64_t>(k);
}

namespace detail {

class BitStream {
 public:
  explicit BitStream(SplitMix64 src) : src_(src) {}

  bool next_bit() {
    if (used_ == 64) {
      word_ = src_.next();
      used_ = 0;
    }
    return (word_ >> used_++) & 1u;
  }

 private:
  SplitMix64 src_;
  std::uint64_t word_ = 0;
  unsigned used_ = 64;
};

inline HashTuple fill_tuple(SplitMix64 src, std::size_t n, std::size_t k) {
  BitStream stream(src);
  std::vector<GF2Matrix> members;
  members.reserve(k + 1);
  for (std::size_t m = 0; m <= k; ++m) {
    GF2Matrix h(k + 1, n);
    for (std::size_t r = 0; r <= k; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (stream.next_bit()) h.set(r, c, true);
    members.push_back(std::move(h));
  }
  return HashTuple(std::move(members));
}

inline void require_digest_fits(std::size_t n, std::size_t k) {
  if (k + 1 > n)
    throw DigestTooWide("digest width " + std::to_string(k + 1) +
                        " exceeds string length " + std::to_string(n));
}

}  // namespace detail

inline HashTuple expand(std::uint64_t seed_value, std::size_t n,
                        std::size_t k) {
  detail::require_digest_fits(n, k);
  return detail::fill_tuple(SplitMix64(expander_initial_state(seed_value, n, k)),
                            n, k);
}

inline HashTuple expand(const Seed& s, std::size_t n, std::size_t k) {
  return expand(s.value, n, k);
}

// Monte Carlo substream: trial t draws its tuple from a fresh stream whose
// initial raw state is the t-th output of the base stream for (mc_seed,n,k).
// Trials are therefore independent of chunking and worker count.
inline HashTuple random_tuple(std::uint64_t mc_seed, std::size_t n,
                              std::size_t k, std::uint64_t trial) {
  detail::require_digest_fits(n, k);
  SplitMix64 base(expander_initial_state(mc_seed, n, k) +
                  trial * kSplitMixIncrement);
  return detail::fill_tuple(SplitMix64(base.next()), n, k);
}

}  // namespace ilc
