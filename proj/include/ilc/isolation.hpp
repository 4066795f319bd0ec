// Isolation predicates over hash tuples, Monte Carlo estimation of their
// success probability, and deterministic search for covering seeds.
//
// A matrix h isolates a member x when no other member shares x's digest.
// A tuple covers a slice when every member is isolated by some component;
// the full-rank variant additionally requires every component matrix to
// have full row rank.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ilc/bitstring.hpp"
#include "ilc/detail/parallel.hpp"
#include "ilc/errors.hpp"
#include "ilc/gf2.hpp"
#include "ilc/language.hpp"
#include "ilc/seed_expander.hpp"

namespace ilc {

enum class CoverVariant { Cover, FullRankCover };

inline const char* to_string(CoverVariant v) {
  return v == CoverVariant::Cover ? "T" : "Ttilde";
}

namespace detail {

// Marks members whose digest under h is unique within the slice.
// covered[i] is sticky across calls so a tuple can accumulate coverage.
inline void mark_isolated(const GF2Matrix& h,
                          const std::vector<BitString>& members,
                          std::vector<char>& covered) {
  if (h.rows() <= 64) {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> dig;
    dig.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      dig.emplace_back(h.matvec_u64(members[i]),
                       static_cast<std::uint32_t>(i));
    std::sort(dig.begin(), dig.end());
    for (std::size_t i = 0; i < dig.size();) {
      std::size_t j = i + 1;
      while (j < dig.size() && dig[j].first == dig[i].first) ++j;
      if (j == i + 1) covered[dig[i].second] = 1;
      i = j;
    }
    return;
  }
  std::unordered_map<BitString, std::uint32_t, BitString::Hasher> counts;
  counts.reserve(members.size());
  for (const auto& m : members) ++counts[h.matvec(m)];
  for (std::size_t i = 0; i < members.size(); ++i)
    if (counts[h.matvec(members[i])] == 1) covered[i] = 1;
}

inline void require_tuple_matches(const HashTuple& t,
                                  const LanguageSlice& lang) {
  if (t.cols() != lang.n())
    throw DimensionError("tuple is over length " + std::to_string(t.cols()) +
                         ", slice has n=" + std::to_string(lang.n()));
}

}  // namespace detail

inline bool isolates(const GF2Matrix& h, const BitString& x,
                     const LanguageSlice& lang) {
  if (h.cols() != lang.n())
    throw DimensionError("matrix is over length " + std::to_string(h.cols()) +
                         ", slice has n=" + std::to_string(lang.n()));
  if (!lang.member(x)) throw NotInLanguage("string is not in the slice");
  const auto& members = lang.members();
  if (h.rows() <= 64) {
    const std::uint64_t dx = h.matvec_u64(x);
    for (const auto& y : members)
      if (y != x && h.matvec_u64(y) == dx) return false;
    return true;
  }
  const BitString dx = h.matvec(x);
  for (const auto& y : members)
    if (y != x && h.matvec(y) == dx) return false;
  return true;
}

inline bool covers_all(const HashTuple& t, const LanguageSlice& lang) {
  detail::require_tuple_matches(t, lang);
  const auto& members = lang.members();
  if (members.empty()) return true;
  std::vector<char> covered(members.size(), 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    detail::mark_isolated(t[i], members, covered);
    if (std::find(covered.begin(), covered.end(), 0) == covered.end())
      return true;
  }
  return false;
}

inline bool covers_all_fullrank(const HashTuple& t,
                                const LanguageSlice& lang) {
  detail::require_tuple_matches(t, lang);
  for (const auto& h : t.members())
    if (h.rank() != t.rows()) return false;
  return covers_all(t, lang);
}

inline bool tuple_covers(const HashTuple& t, const LanguageSlice& lang,
                         CoverVariant v) {
  return v == CoverVariant::Cover ? covers_all(t, lang)
                                  : covers_all_fullrank(t, lang);
}

struct CoverageEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  // The probability floor the estimate is compared against: 1/2 for the
  // plain predicate, 1/3 for the full-rank variant.
  double reference_bound = 0.0;
  // Whether 2^k >= |A| held; the floor is only guaranteed under it.
  bool cardinality_bound_ok = true;
};

inline CoverageEstimate estimate_coverage_probability(
    const LanguageSlice& lang, unsigned k, CoverVariant variant,
    std::uint64_t trials, std::uint64_t mc_seed, unsigned jobs = 1) {
  if (trials == 0) throw ConfigError("trial count must be positive");
  detail::require_digest_fits(lang.n(), k);
  const auto& members = lang.members();  // materialize before forking
  (void)members;

  CoverageEstimate out;
  out.trials = trials;
  out.reference_bound = variant == CoverVariant::Cover ? 0.5 : 1.0 / 3.0;
  out.cardinality_bound_ok =
      k >= 63 || lang.cardinality() <= (std::uint64_t{1} << k);

  const unsigned workers = jobs == 0 ? 1 : jobs;
  std::vector<std::uint64_t> hits(std::max<unsigned>(workers, 1), 0);
  detail::run_chunked(trials, workers,
                      [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
                        std::uint64_t local = 0;
                        for (std::uint64_t t = lo; t < hi; ++t) {
                          HashTuple tuple =
                              random_tuple(mc_seed, lang.n(), k, t);
                          if (tuple_covers(tuple, lang, variant)) ++local;
                        }
                        hits[w] = local;
                      });
  for (auto h : hits) out.successes += h;
  out.estimate =
      static_cast<double>(out.successes) / static_cast<double>(trials);
  out.stderr_ = std::sqrt(out.estimate * (1.0 - out.estimate) /
                          static_cast<double>(trials));
  return out;
}

struct CoveringSeed {
  Seed seed;
  HashTuple tuple;
};

// Smallest seed in [0, seed_space) whose expanded tuple satisfies the
// predicate. The parallel scan claims blocks in increasing order and keeps a
// running minimum, so the result is independent of the worker count.
inline CoveringSeed find_covering_seed(const LanguageSlice& lang, unsigned k,
                                       CoverVariant variant,
                                       std::uint64_t seed_space = kDefaultSeedSpace,
                                       unsigned jobs = 1) {
  Seed::validate_space(seed_space);
  detail::require_digest_fits(lang.n(), k);
  const auto& members = lang.members();
  (void)members;

  const std::size_t n = lang.n();
  auto qualifies = [&](std::uint64_t s) {
    return tuple_covers(expand(s, n, k), lang, variant);
  };

  std::uint64_t found = seed_space;
  const unsigned workers = jobs == 0 ? 1 : jobs;
  if (workers <= 1) {
    for (std::uint64_t s = 0; s < seed_space; ++s)
      if (qualifies(s)) {
        found = s;
        break;
      }
  } else {
    constexpr std::uint64_t kBlock = 64;
    std::atomic<std::uint64_t> next_block{0};
    std::atomic<std::uint64_t> best{~std::uint64_t{0}};
    const std::uint64_t blocks = (seed_space + kBlock - 1) / kBlock;
    detail::run_chunked(
        std::min<std::uint64_t>(workers, blocks), workers,
        [&](unsigned, std::uint64_t, std::uint64_t) {
          for (;;) {
            const std::uint64_t b =
                next_block.fetch_add(1, std::memory_order_relaxed);
            if (b >= blocks) return;
            const std::uint64_t lo = b * kBlock;
            const std::uint64_t hi = std::min(lo + kBlock, seed_space);
            if (lo >= best.load(std::memory_order_relaxed)) return;
            for (std::uint64_t s = lo; s < hi; ++s) {
              if (s >= best.load(std::memory_order_relaxed)) break;
              if (qualifies(s)) {
                std::uint64_t cur = best.load(std::memory_order_relaxed);
                while (s < cur &&
                       !best.compare_exchange_weak(cur, s,
                                                   std::memory_order_relaxed)) {
                }
                break;
              }
            }
          }
        });
    const std::uint64_t b = best.load();
    if (b != ~std::uint64_t{0}) found = b;
  }

  if (found >= seed_space)
    throw SeedSpaceExhausted("no covering seed in [0, " +
                             std::to_string(seed_space) + ") for slice \"" +
                             lang.spec() + "\" with k=" + std::to_string(k) +
                             ", variant " + to_string(variant));
  return CoveringSeed{Seed(found, seed_space), expand(found, n, k)};
}

}  // namespace ilc
