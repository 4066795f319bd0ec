// Cover-free families over a ground set [M]: a family is k-cover-free when
// no member set is contained in the union of k other members. Two
// independent decision routes are kept on purpose — a pruned branch-and-cover
// search and a plain enumeration of k-subsets that also extracts the first
// violating witness — plus the Dyachkov-Rykov ground-set lower bound
// M >= k^2 log2(N) / (2 log2(k) + c) for k <= N^(1/3).
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ilc/bitstring.hpp"
#include "ilc/errors.hpp"

namespace ilc {

// N distinct finite subsets of [M], 1-based. Each set is stored as an
// M-bit mask where bit p represents element p+1.
struct SetFamily {
  std::size_t ground_size = 0;
  std::vector<BitString> sets;

  static SetFamily from_masks(std::size_t ground_size,
                              std::vector<BitString> sets) {
    if (ground_size == 0) throw IngestError("ground set must be nonempty");
    SetFamily f{ground_size, std::move(sets)};
    for (const auto& s : f.sets)
      if (s.size() != ground_size)
        throw IngestError("set mask width does not match the ground size");
    for (std::size_t i = 0; i < f.sets.size(); ++i)
      for (std::size_t j = i + 1; j < f.sets.size(); ++j)
        if (f.sets[i] == f.sets[j])
          throw IngestError("family members must be pairwise distinct");
    return f;
  }

  static SetFamily from_elements(
      std::size_t ground_size,
      const std::vector<std::vector<std::size_t>>& sets) {
    std::vector<BitString> masks;
    masks.reserve(sets.size());
    for (const auto& elems : sets) {
      BitString mask(ground_size == 0 ? 1 : ground_size);
      for (auto e : elems) {
        if (e < 1 || e > ground_size)
          throw IngestError("element " + std::to_string(e) +
                            " outside [1, " + std::to_string(ground_size) +
                            "]");
        if (mask.get(e - 1))
          throw IngestError("element " + std::to_string(e) +
                            " repeated within a set");
        mask.set(e - 1, true);
      }
      masks.push_back(std::move(mask));
    }
    return from_masks(ground_size, std::move(masks));
  }
};

// Text format: first line "M N", then one subset per line as space-separated
// elements of [1, M]; a blank line is the empty set.
inline SetFamily parse_family(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IngestError("family file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::istringstream head(line);
  std::uint64_t m = 0, n = 0;
  if (!(head >> m >> n) || (head >> line))
    throw IngestError("family file: first line must be \"M N\"");
  if (m == 0) throw IngestError("family file: M must be >= 1");

  std::vector<std::vector<std::size_t>> sets;
  sets.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      throw IngestError("family file: expected " + std::to_string(n) +
                        " subset lines");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::vector<std::size_t> elems;
    std::uint64_t e = 0;
    while (ls >> e) elems.push_back(static_cast<std::size_t>(e));
    if (!ls.eof())
      throw IngestError("family file: bad element on subset line " +
                        std::to_string(i + 1));
    sets.push_back(std::move(elems));
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty())
      throw IngestError("family file: trailing content after the last subset");
  }
  return SetFamily::from_elements(static_cast<std::size_t>(m), sets);
}

inline SetFamily load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open family file: " + path);
  return parse_family(in);
}

namespace detail {

inline void require_cover_k(const SetFamily& f, unsigned k) {
  if (k < 1 || static_cast<std::size_t>(k) + 1 > f.sets.size())
    throw ConfigError("k must satisfy 1 <= k <= N-1 (N=" +
                      std::to_string(f.sets.size()) + ", k=" +
                      std::to_string(k) + ")");
}

// Can `uncovered` be covered by at most `budget` of the candidate sets?
// Branches on the lowest uncovered element; only candidates containing it
// can make progress, and an applied candidate never recurs because its
// elements are gone from `uncovered`.
inline bool coverable(const BitString& uncovered,
                      const std::vector<const BitString*>& candidates,
                      unsigned budget) {
  if (uncovered.is_zero()) return true;
  if (budget == 0) return false;
  const std::size_t e = uncovered.find_first();
  for (const auto* cand : candidates) {
    if (!cand->get(e)) continue;
    BitString rest = uncovered;
    rest.clear_bits_of(*cand);
    if (coverable(rest, candidates, budget - 1)) return true;
  }
  return false;
}

}  // namespace detail

inline bool is_k_cover_free(const SetFamily& f, unsigned k) {
  detail::require_cover_k(f, k);
  for (std::size_t i = 0; i < f.sets.size(); ++i) {
    std::vector<const BitString*> candidates;
    candidates.reserve(f.sets.size() - 1);
    for (std::size_t j = 0; j < f.sets.size(); ++j)
      if (j != i && f.sets[j].intersects(f.sets[i]))
        candidates.push_back(&f.sets[j]);
    if (f.sets[i].is_zero() || detail::coverable(f.sets[i], candidates, k))
      return false;
  }
  return true;
}

struct CoverViolation {
  std::size_t covered = 0;            // index of the engulfed set
  std::vector<std::size_t> coverers;  // k distinct indices, ascending
};

// Plain enumeration over all (covered, k-subset) choices in lexicographic
// order; the first containment found is returned. Kept deliberately
// independent of is_k_cover_free so the two can cross-check each other.
inline std::optional<CoverViolation> find_cover_violation(const SetFamily& f,
                                                          unsigned k) {
  detail::require_cover_k(f, k);
  const std::size_t n = f.sets.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> others;
    others.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others.push_back(j);

    std::vector<std::size_t> pick(k);
    for (std::size_t p = 0; p < k; ++p) pick[p] = p;
    auto next_combination = [&] {
      std::size_t p = k;
      while (p-- > 0) {
        if (pick[p] < others.size() - k + p) {
          ++pick[p];
          for (std::size_t q = p + 1; q < k; ++q) pick[q] = pick[q - 1] + 1;
          return true;
        }
      }
      return false;
    };
    do {
      BitString uni(f.ground_size);
      for (std::size_t p = 0; p < k; ++p) uni |= f.sets[others[pick[p]]];
      if (f.sets[i].is_subset_of(uni)) {
        CoverViolation v;
        v.covered = i;
        v.coverers.reserve(k);
        for (std::size_t p = 0; p < k; ++p)
          v.coverers.push_back(others[pick[p]]);
        return v;
      }
    } while (next_combination());
  }
  return std::nullopt;
}

inline bool dr_hypothesis_holds(std::uint64_t n_sets, std::uint64_t k) {
  return static_cast<unsigned __int128>(k) * k * k <=
         static_cast<unsigned __int128>(n_sets);
}

inline double dr_lower_bound(std::uint64_t n_sets, std::uint64_t k, double c) {
  if (n_sets < 2 || k < 2 || !(c > 0.0))
    throw ConfigError("lower bound needs N >= 2, k >= 2, c > 0");
  return static_cast<double>(k) * static_cast<double>(k) *
         std::log2(static_cast<double>(n_sets)) /
         (2.0 * std::log2(static_cast<double>(k)) + c);
}

struct BoundReport {
  bool cover_free = false;
  std::optional<CoverViolation> violation;
  std::uint64_t n_sets = 0;
  std::uint64_t ground_size = 0;
  unsigned k = 0;
  double c = 0.0;
  bool hypothesis_ok = false;  // k <= N^(1/3)
  double bound = 0.0;
  double margin = 0.0;      // M - bound
  bool satisfied = false;   // cover_free && hypothesis_ok && M >= bound
  // Smallest c at which M >= bound holds; <= 0 means every c > 0 works.
  double min_c = 0.0;
};

inline BoundReport check_family_against_bound(const SetFamily& f, unsigned k,
                                              double c) {
  BoundReport r;
  r.n_sets = f.sets.size();
  r.ground_size = f.ground_size;
  r.k = k;
  r.c = c;
  r.bound = dr_lower_bound(r.n_sets, k, c);
  r.hypothesis_ok = dr_hypothesis_holds(r.n_sets, k);
  r.margin = static_cast<double>(r.ground_size) - r.bound;
  r.min_c = static_cast<double>(k) * static_cast<double>(k) *
                std::log2(static_cast<double>(r.n_sets)) /
                static_cast<double>(r.ground_size) -
            2.0 * std::log2(static_cast<double>(k));
  r.violation = find_cover_violation(f, k);
  r.cover_free = !r.violation.has_value();
  r.satisfied = r.cover_free && r.hypothesis_ok && r.margin >= 0.0;
  return r;
}

}  // namespace ilc
