// Finite language slices: the members of a language at one fixed string
// length, behind a membership oracle, a lexicographic enumerator, and a
// cached cardinality.
//
// Built-in slice kinds (the strings accepted by parse_spec):
//   explicit:<path>   one {0,1}-string per line, uniform length, no duplicates
//   hamming:<n>:<w>   strings of length n with exactly w ones
//   dfa:<path>        binary-alphabet automaton; the file carries the slice
//                     length (format documented in the README)
// Slices are immutable after construction and safe to share across threads.
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ilc/bitstring.hpp"
#include "ilc/errors.hpp"
#include "ilc/seed_expander.hpp"

namespace ilc {

// Deterministic finite automaton over the alphabet {0,1}.
struct Dfa {
  std::size_t start = 0;
  std::vector<std::uint8_t> accepting;              // one flag per state
  std::vector<std::array<std::uint32_t, 2>> delta;  // [state][symbol]

  std::size_t states() const { return delta.size(); }

  bool accepts(const BitString& x) const {
    std::uint32_t q = static_cast<std::uint32_t>(start);
    for (std::size_t p = 0; p < x.size(); ++p) q = delta[q][x.get(p) ? 1 : 0];
    return accepting[q] != 0;
  }
};

struct DfaFile {
  Dfa dfa;
  std::size_t length = 0;  // the slice length n the file applies to
};

// Text format ('#' comments and blank lines are skipped):
//   length <n>
//   states <count>
//   start <state>
//   accept [<state> ...]
//   <state> <next-on-0> <next-on-1>     one line per state
inline DfaFile parse_dfa_file(std::istream& in) {
  std::vector<std::string> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto first = raw.find_first_not_of(" \t");
    if (first == std::string::npos || raw[first] == '#') continue;
    lines.push_back(raw);
  }
  if (lines.size() < 4) throw IngestError("dfa file is incomplete");

  auto fields_of = [](const std::string& line) {
    std::istringstream ls(line);
    std::vector<std::string> fields;
    std::string f;
    while (ls >> f) fields.push_back(f);
    return fields;
  };
  auto to_number = [](const std::string& tok, std::size_t bound,
                      const char* what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      throw IngestError(std::string("dfa file: bad ") + what + ": \"" + tok +
                        "\"");
    }
    if (pos != tok.size() || v >= bound)
      throw IngestError(std::string("dfa file: ") + what +
                        " out of range: \"" + tok + "\"");
    return static_cast<std::size_t>(v);
  };

  auto head = fields_of(lines[0]);
  if (head.size() != 2 || head[0] != "length")
    throw IngestError("dfa file: first line must be \"length <n>\"");
  DfaFile out;
  out.length = to_number(head[1], std::size_t{1} << 20, "length");
  if (out.length == 0) throw IngestError("dfa file: length must be >= 1");

  auto states_line = fields_of(lines[1]);
  if (states_line.size() != 2 || states_line[0] != "states")
    throw IngestError("dfa file: second line must be \"states <count>\"");
  const std::size_t count = to_number(states_line[1], std::size_t{1} << 24, "state count");
  if (count == 0) throw IngestError("dfa file: automaton needs a state");

  auto start_line = fields_of(lines[2]);
  if (start_line.size() != 2 || start_line[0] != "start")
    throw IngestError("dfa file: third line must be \"start <state>\"");
  out.dfa.start = to_number(start_line[1], count, "state id");

  auto accept_line = fields_of(lines[3]);
  if (accept_line.empty() || accept_line[0] != "accept")
    throw IngestError("dfa file: fourth line must list accepting states");
  out.dfa.accepting.assign(count, 0);
  for (std::size_t i = 1; i < accept_line.size(); ++i)
    out.dfa.accepting[to_number(accept_line[i], count, "state id")] = 1;

  if (lines.size() != 4 + count)
    throw IngestError("dfa file: expected one transition line per state");
  out.dfa.delta.assign(count, {0, 0});
  std::vector<bool> seen(count, false);
  for (std::size_t i = 4; i < lines.size(); ++i) {
    auto t = fields_of(lines[i]);
    if (t.size() != 3)
      throw IngestError("dfa file: transition line needs 3 fields");
    const auto q = to_number(t[0], count, "state id");
    if (seen[q]) throw IngestError("dfa file: duplicate transition line");
    seen[q] = true;
    out.dfa.delta[q] = {
        static_cast<std::uint32_t>(to_number(t[1], count, "state id")),
        static_cast<std::uint32_t>(to_number(t[2], count, "state id"))};
  }
  return out;
}

class LanguageSlice {
 public:
  using Oracle = std::function<bool(const BitString&)>;

  static LanguageSlice hamming(std::size_t n, std::size_t w) {
    if (n == 0) throw ConfigError("hamming slice needs n >= 1");
    if (w > n) throw ConfigError("hamming weight exceeds length");
    auto st = std::make_shared<State>();
    st->n = n;
    st->spec = "hamming:" + std::to_string(n) + ":" + std::to_string(w);
    st->oracle = [w](const BitString& x) { return x.popcount() == w; };
    st->enumerate = [n, w] { return enumerate_dfa(weight_automaton(w), n); };
    return LanguageSlice(std::move(st));
  }

  static LanguageSlice from_members(std::size_t n,
                                    std::vector<BitString> members,
                                    std::string label = "") {
    if (n == 0) throw ConfigError("slice needs n >= 1");
    auto sorted = std::move(members);
    for (const auto& m : sorted)
      if (m.size() != n)
        throw IngestError("explicit member has length " +
                          std::to_string(m.size()) + ", expected " +
                          std::to_string(n));
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw IngestError("explicit set contains duplicates");

    auto st = std::make_shared<State>();
    st->n = n;
    st->spec = label.empty() ? fingerprint_label(n, sorted) : std::move(label);
    auto shared = std::make_shared<std::vector<BitString>>(std::move(sorted));
    st->oracle = [shared](const BitString& x) {
      return std::binary_search(shared->begin(), shared->end(), x);
    };
    st->enumerate = [shared] { return *shared; };
    return LanguageSlice(std::move(st));
  }

  static LanguageSlice from_explicit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open explicit set file: " + path);
    std::vector<BitString> members;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      BitString b = BitString::parse(line);
      if (n == 0) n = b.size();
      members.push_back(std::move(b));
    }
    if (members.empty())
      throw IngestError("explicit set file has no strings: " + path);
    return from_members(n, std::move(members), "explicit:" + path);
  }

  static LanguageSlice from_dfa(Dfa dfa, std::size_t n, std::string label) {
    if (n == 0) throw ConfigError("slice needs n >= 1");
    auto st = std::make_shared<State>();
    st->n = n;
    st->spec = std::move(label);
    auto shared = std::make_shared<Dfa>(std::move(dfa));
    st->oracle = [shared](const BitString& x) { return shared->accepts(x); };
    st->enumerate = [shared, n] { return enumerate_dfa(*shared, n); };
    return LanguageSlice(std::move(st));
  }

  static LanguageSlice from_dfa_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open dfa file: " + path);
    DfaFile f = parse_dfa_file(in);
    return from_dfa(std::move(f.dfa), f.length, "dfa:" + path);
  }

  // Oracle-only slice. Enumeration falls back to a full scan of {0,1}^n,
  // allowed only up to the configured cap.
  static LanguageSlice from_predicate(std::size_t n, std::string spec,
                                      Oracle oracle,
                                      std::size_t scan_cap = kDefaultScanCap) {
    if (n == 0) throw ConfigError("slice needs n >= 1");
    auto st = std::make_shared<State>();
    st->n = n;
    st->spec = std::move(spec);
    st->oracle = std::move(oracle);
    st->enumerate = [n, scan_cap, raw = st.get()] {
      if (n > scan_cap)
        throw EnumerationUnsupported(
            "no native enumerator and n=" + std::to_string(n) +
            " exceeds the scan cap " + std::to_string(scan_cap));
      std::vector<BitString> out;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        BitString x = BitString::from_index(v, n);
        if (raw->oracle(x)) out.push_back(std::move(x));
      }
      return out;
    };
    return LanguageSlice(std::move(st));
  }

  static LanguageSlice parse_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind =
        spec.substr(0, colon == std::string::npos ? spec.size() : colon);
    const std::string rest =
        colon == std::string::npos ? std::string{} : spec.substr(colon + 1);
    auto parse_count = [&spec](const std::string& tok) {
      std::size_t pos = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(tok, &pos);
      } catch (const std::exception&) {
        throw ConfigError("bad number in language spec: " + spec);
      }
      if (pos != tok.size())
        throw ConfigError("bad number in language spec: " + spec);
      return static_cast<std::size_t>(v);
    };
    if (kind == "hamming") {
      const auto sep = rest.find(':');
      if (sep == std::string::npos)
        throw ConfigError("expected hamming:<n>:<w>, got: " + spec);
      return hamming(parse_count(rest.substr(0, sep)),
                     parse_count(rest.substr(sep + 1)));
    }
    if (kind == "explicit") {
      if (rest.empty()) throw ConfigError("expected explicit:<path>");
      return from_explicit_file(rest);
    }
    if (kind == "dfa") {
      if (rest.empty()) throw ConfigError("expected dfa:<path>");
      return from_dfa_file(rest);
    }
    throw ConfigError("unknown language spec kind: " + spec);
  }

  std::size_t n() const { return s_->n; }
  const std::string& spec() const { return s_->spec; }

  bool member(const BitString& x) const {
    if (x.size() != s_->n)
      throw DimensionError("candidate has " + std::to_string(x.size()) +
                           " bits, slice has n=" + std::to_string(s_->n));
    return s_->oracle(x);
  }

  // Members in lexicographic order; materialized once and cached.
  const std::vector<BitString>& members() const {
    std::call_once(s_->once, [this] { s_->members = s_->enumerate(); });
    return s_->members;
  }

  std::uint64_t cardinality() const { return members().size(); }

  // k = ceil(log2 |A|), with k=0 for singletons. The digest must fit:
  // k+1 <= n.
  unsigned choose_k() const {
    const std::uint64_t card = cardinality();
    if (card == 0) throw EmptyLanguage("slice \"" + s_->spec + "\" is empty");
    const unsigned k =
        card == 1 ? 0u : static_cast<unsigned>(std::bit_width(card - 1));
    if (k + 1 > s_->n)
      throw DigestTooWide("k+1 = " + std::to_string(k + 1) +
                          " exceeds n = " + std::to_string(s_->n));
    return k;
  }

  // The running-time analysis assumes |A| <= 2^n / n^2; round trips do not
  // depend on it, so callers report rather than enforce it.
  bool density_hypothesis_ok() const {
    const long double limit =
        ldexpl(1.0L, static_cast<int>(std::min<std::size_t>(s_->n, 16000))) /
        (static_cast<long double>(s_->n) * static_cast<long double>(s_->n));
    return static_cast<long double>(cardinality()) <= limit;
  }

 private:
  struct State {
    std::size_t n = 0;
    std::string spec;
    Oracle oracle;
    std::function<std::vector<BitString>()> enumerate;
    mutable std::once_flag once;
    mutable std::vector<BitString> members;
  };

  explicit LanguageSlice(std::shared_ptr<State> st) : s_(std::move(st)) {}

  static Dfa weight_automaton(std::size_t w) {
    Dfa d;
    const std::size_t states = w + 2;  // ones seen so far, plus overflow sink
    d.start = 0;
    d.accepting.assign(states, 0);
    d.accepting[w] = 1;
    d.delta.assign(states, {0, 0});
    for (std::size_t q = 0; q < states; ++q) {
      d.delta[q][0] = static_cast<std::uint32_t>(q);
      d.delta[q][1] = static_cast<std::uint32_t>(std::min(q + 1, states - 1));
    }
    return d;
  }

  // Depth-first with the 0-branch before the 1-branch, pruned by a
  // reachability table, so emission order is lexicographic.
  static std::vector<BitString> enumerate_dfa(const Dfa& d, std::size_t n) {
    // reach[q][r]: an accepting state is reachable from q in exactly r steps
    std::vector<std::vector<std::uint8_t>> reach(
        d.states(), std::vector<std::uint8_t>(n + 1, 0));
    for (std::size_t q = 0; q < d.states(); ++q) reach[q][0] = d.accepting[q];
    for (std::size_t r = 1; r <= n; ++r)
      for (std::size_t q = 0; q < d.states(); ++q)
        reach[q][r] = reach[d.delta[q][0]][r - 1] | reach[d.delta[q][1]][r - 1];

    std::vector<BitString> out;
    if (!reach[d.start][n]) return out;
    struct Frame {
      std::uint32_t state;
      std::uint8_t branch;
    };
    std::vector<Frame> path;
    path.reserve(n + 1);
    BitString scratch(n);
    path.push_back({static_cast<std::uint32_t>(d.start), 0});
    while (!path.empty()) {
      const std::size_t pos = path.size() - 1;  // symbols consumed so far
      if (pos == n) {
        out.push_back(scratch);
        path.pop_back();
        continue;
      }
      Frame& f = path.back();
      if (f.branch > 1) {
        path.pop_back();
        continue;
      }
      const std::uint8_t sym = f.branch++;
      const std::uint32_t nxt = d.delta[f.state][sym];
      if (!reach[nxt][n - pos - 1]) continue;
      scratch.set(pos, sym != 0);
      path.push_back({nxt, 0});
    }
    return out;
  }

  static std::string fingerprint_label(std::size_t n,
                                       const std::vector<BitString>& members) {
    std::uint64_t h = 0xcbf29ce484222325ull ^ n;
    BitString::Hasher hasher;
    for (const auto& m : members) {
      h ^= hasher(m);
      h *= 0x100000001b3ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "inline:%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
  }

  std::shared_ptr<State> s_;
};

}  // namespace ilc
