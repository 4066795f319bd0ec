// Distinguisher descriptors: self-contained programs that accept exactly one
// member of a slice.
//
// Unlike the codec, which searches a seed per string, descriptors for one
// (slice, k) all share a single covering seed, found once and cached, so a
// descriptor is just (k, seed, index, digest) against the shared tuple.
// Acceptance is membership AND digest match: the membership conjunct is what
// makes "rejects everything else" hold over all strings of length n, not
// just over the slice.
#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ilc/bitstring.hpp"
#include "ilc/codec.hpp"
#include "ilc/errors.hpp"
#include "ilc/gf2.hpp"
#include "ilc/isolation.hpp"
#include "ilc/language.hpp"
#include "ilc/seed_expander.hpp"

namespace ilc {

// Process-wide cache of covering seeds keyed by (spec, n, k, seed_space).
// First computation wins; later callers see the same tuple. Entries are
// never evicted, so returned references stay valid.
inline const CoveringSeed& covering_seed_cached(const LanguageSlice& lang,
                                                unsigned k,
                                                std::uint64_t seed_space,
                                                unsigned jobs = 1) {
  using Key = std::tuple<std::string, std::size_t, unsigned, std::uint64_t>;
  static std::map<Key, CoveringSeed> cache;
  static std::mutex mutex;

  Key key{lang.spec(), lang.n(), k, seed_space};
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache
             .emplace(std::move(key),
                      find_covering_seed(lang, k, CoverVariant::Cover,
                                         seed_space, jobs))
             .first;
  }
  return it->second;
}

inline CompressedRecord build_descriptor(
    const BitString& x, const LanguageSlice& lang, unsigned k,
    std::uint64_t seed_space = kDefaultSeedSpace, unsigned jobs = 1) {
  detail::require_codec_shape(lang, k);
  if (!lang.member(x))
    throw NotInLanguage("cannot describe " + x.to_string() +
                        ": not in slice \"" + lang.spec() + "\"");
  const CoveringSeed& cover = covering_seed_cached(lang, k, seed_space, jobs);

  const auto& members = lang.members();
  for (std::size_t i = 0; i < cover.tuple.size(); ++i) {
    if (!detail::isolates_member(cover.tuple[i], x, members)) continue;
    CompressedRecord r;
    r.n = static_cast<std::uint16_t>(lang.n());
    r.k = static_cast<std::uint16_t>(k);
    r.seed = cover.seed.value;
    r.index = static_cast<std::uint16_t>(i + 1);
    r.digest = cover.tuple[i].matvec(x);
    return r;
  }
  // Unreachable: the cached tuple satisfies the covering predicate.
  throw SeedSpaceExhausted("covering tuple does not isolate " + x.to_string());
}

inline bool run_descriptor(const CompressedRecord& p, const BitString& v,
                           const LanguageSlice& lang) {
  if (v.size() != p.n)
    throw DimensionError("candidate has " + std::to_string(v.size()) +
                         " bits, descriptor is for n=" + std::to_string(p.n));
  if (lang.n() != p.n)
    throw DimensionError("slice has n=" + std::to_string(lang.n()) +
                         ", descriptor is for n=" + std::to_string(p.n));
  if (p.index < 1 || p.index > p.k + 1)
    throw CorruptRecord("matrix index outside [1, k+1]");
  if (!lang.member(v)) return false;
  const HashTuple tuple = expand(p.seed, p.n, p.k);
  return tuple[p.index - 1].matvec(v) == p.digest;
}

// Number of accepted strings: over the slice by default, or over all of
// {0,1}^n when full_sweep is set (n capped by scan_cap).
inline std::uint64_t count_accepted(const CompressedRecord& p,
                                    const LanguageSlice& lang,
                                    bool full_sweep = false,
                                    std::size_t scan_cap = kDefaultScanCap) {
  if (lang.n() != p.n)
    throw DimensionError("slice has n=" + std::to_string(lang.n()) +
                         ", descriptor is for n=" + std::to_string(p.n));
  if (p.index < 1 || p.index > p.k + 1)
    throw CorruptRecord("matrix index outside [1, k+1]");
  const HashTuple tuple = expand(p.seed, p.n, p.k);
  const GF2Matrix& h = tuple[p.index - 1];

  std::uint64_t accepted = 0;
  if (full_sweep) {
    if (p.n > scan_cap)
      throw EnumerationUnsupported(
          "full sweep of n=" + std::to_string(p.n) +
          " exceeds the scan cap " + std::to_string(scan_cap));
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << p.n); ++v) {
      const BitString c = BitString::from_index(v, p.n);
      if (lang.member(c) && h.matvec(c) == p.digest) ++accepted;
    }
    return accepted;
  }
  // The membership conjunct makes the slice sweep sufficient.
  for (const auto& c : lang.members())
    if (h.matvec(c) == p.digest) ++accepted;
  return accepted;
}

inline bool verify_unique(const CompressedRecord& p, const LanguageSlice& lang,
                          bool full_sweep = false,
                          std::size_t scan_cap = kDefaultScanCap) {
  return count_accepted(p, lang, full_sweep, scan_cap) == 1;
}

inline unsigned descriptor_bits(const CompressedRecord& p) {
  return compressed_bits(p);
}

}  // namespace ilc
