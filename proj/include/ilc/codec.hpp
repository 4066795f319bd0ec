// Per-string compression against a language slice, the matching decoder,
// and the ILC1 archive container.
//
// A record stores (n, k, seed, index, digest). The encoder searches for the
// smallest seed whose expanded tuple contains a full-rank matrix isolating
// the input, so the decoder can recover the string by walking the digest's
// preimage set (at most 2^(n-k-1) candidates) and keeping the unique member
// of the slice. Decoding needs only the membership oracle.
//
// ILC1 layout, all integers little-endian:
//   magic "ILC1" | version u8=1 | n u16 | k u16 | spec-len u16 | spec bytes
//   | record count u32 | records
// Each record: seed u64 | index u16 (1-based) | digest, ceil((k+1)/8) bytes,
// digest bit 0 in the LSB of the first byte. Trailing bytes are rejected.
#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ilc/bitstring.hpp"
#include "ilc/detail/parallel.hpp"
#include "ilc/errors.hpp"
#include "ilc/gf2.hpp"
#include "ilc/language.hpp"
#include "ilc/seed_expander.hpp"

namespace ilc {

struct CompressedRecord {
  std::uint16_t n = 0;
  std::uint16_t k = 0;
  std::uint64_t seed = 0;
  std::uint16_t index = 1;  // 1-based position of the isolating matrix
  BitString digest{1};
};

// Payload size in bits: k+1 digest bits plus the fixed 64-bit seed and
// 16-bit index fields. The 80-bit constant is this artifact's fixed-width
// overhead per record.
inline unsigned compressed_bits(const CompressedRecord& r) {
  return static_cast<unsigned>(r.k) + 81;
}

namespace detail {

inline void require_codec_shape(const LanguageSlice& lang, unsigned k) {
  require_digest_fits(lang.n(), k);
  if (lang.n() > 0xFFFF)
    throw ConfigError("records support n up to 65535, got " +
                      std::to_string(lang.n()));
  if (k > 0xFFFE)
    throw ConfigError("records support k up to 65534, got " +
                      std::to_string(k));
}

// True when h (with full row rank already established by the caller) gives
// x a digest shared by no other member.
inline bool isolates_member(const GF2Matrix& h, const BitString& x,
                            const std::vector<BitString>& members) {
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

}  // namespace detail

inline CompressedRecord encode(const BitString& x, const LanguageSlice& lang,
                               unsigned k,
                               std::uint64_t seed_space = kDefaultSeedSpace) {
  detail::require_codec_shape(lang, k);
  Seed::validate_space(seed_space);
  if (!lang.member(x))
    throw NotInLanguage("cannot encode " + x.to_string() +
                        ": not in slice \"" + lang.spec() + "\"");
  const auto& members = lang.members();

  for (std::uint64_t s = 0; s < seed_space; ++s) {
    const HashTuple tuple = expand(s, lang.n(), k);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      const GF2Matrix& h = tuple[i];
      if (h.rank() != k + 1) continue;
      if (!detail::isolates_member(h, x, members)) continue;
      CompressedRecord r;
      r.n = static_cast<std::uint16_t>(lang.n());
      r.k = static_cast<std::uint16_t>(k);
      r.seed = s;
      r.index = static_cast<std::uint16_t>(i + 1);
      r.digest = h.matvec(x);
      return r;
    }
  }
  throw SeedSpaceExhausted("no seed in [0, " + std::to_string(seed_space) +
                           ") yields a full-rank isolating matrix for " +
                           x.to_string());
}

// Encodes each input independently; record order matches input order for any
// worker count.
inline std::vector<CompressedRecord> encode_all(
    const std::vector<BitString>& xs, const LanguageSlice& lang, unsigned k,
    std::uint64_t seed_space = kDefaultSeedSpace, unsigned jobs = 1) {
  detail::require_codec_shape(lang, k);
  Seed::validate_space(seed_space);
  const auto& members = lang.members();  // materialize before forking
  (void)members;
  std::vector<CompressedRecord> out(xs.size());
  detail::run_chunked(xs.size(), jobs,
                      [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
                        for (std::uint64_t i = lo; i < hi; ++i)
                          out[i] = encode(xs[i], lang, k, seed_space);
                      });
  return out;
}

struct DecodeResult {
  BitString value;
  std::uint64_t scanned = 0;  // preimage candidates examined
};

inline DecodeResult decode_traced(const CompressedRecord& r,
                                  const LanguageSlice& lang) {
  if (lang.n() != r.n)
    throw DimensionError("record is for n=" + std::to_string(r.n) +
                         ", slice has n=" + std::to_string(lang.n()));
  if (r.index < 1 || r.index > r.k + 1)
    throw CorruptRecord("matrix index " + std::to_string(r.index) +
                        " outside [1, " + std::to_string(r.k + 1) + "]");
  if (r.digest.size() != static_cast<std::size_t>(r.k) + 1)
    throw CorruptRecord("digest width does not match k");
  if (static_cast<std::size_t>(r.k) + 1 > lang.n())
    throw CorruptRecord("digest wider than the string length");

  const HashTuple tuple = expand(r.seed, r.n, r.k);
  const GF2Matrix& h = tuple[r.index - 1];

  DecodeResult out{BitString(lang.n()), 0};
  bool found = false;
  PreimageEnumerator candidates(h, r.digest);
  while (!candidates.done()) {
    BitString c = candidates.next();
    ++out.scanned;
    if (!lang.member(c)) continue;
    if (found)
      throw AmbiguousRecord(
          "two slice members share the digest; record and language disagree");
    out.value = std::move(c);
    found = true;
  }
  if (!found)
    throw CorruptRecord("no slice member matches the digest");
  return out;
}

inline BitString decode(const CompressedRecord& r, const LanguageSlice& lang) {
  return decode_traced(r, lang).value;
}

struct Archive {
  std::uint16_t n = 0;
  std::uint16_t k = 0;
  std::string lang_spec;
  std::vector<CompressedRecord> records;
};

namespace detail {

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::span<const std::uint8_t> take(std::size_t count, const char* what) {
    if (data_.size() - pos_ < count)
      throw FormatError(std::string("archive truncated in ") + what);
    auto out = data_.subspan(pos_, count);
    pos_ += count;
    return out;
  }

  std::uint16_t u16(const char* what) {
    auto b = take(2, what);
    return static_cast<std::uint16_t>(b[0] | (std::uint16_t{b[1]} << 8));
  }

  std::uint32_t u32(const char* what) {
    auto b = take(4, what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return v;
  }

  std::uint64_t u64(const char* what) {
    auto b = take(8, what);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return v;
  }

  bool exhausted() const { return pos_ == data_.size(); }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline constexpr char kArchiveMagic[4] = {'I', 'L', 'C', '1'};
inline constexpr std::uint8_t kArchiveVersion = 1;

inline std::vector<std::uint8_t> serialize_archive(
    std::uint16_t n, std::uint16_t k, std::string_view lang_spec,
    std::span<const CompressedRecord> records) {
  if (static_cast<std::size_t>(k) + 1 > n)
    throw FormatError("archive header would violate k+1 <= n");
  if (lang_spec.size() > 0xFFFF)
    throw FormatError("language spec string too long for the archive header");
  for (const auto& r : records) {
    if (r.n != n || r.k != k)
      throw FormatError("all archived records must share (n, k)");
    if (r.index < 1 || r.index > k + 1)
      throw FormatError("record index outside [1, k+1]");
    if (r.digest.size() != static_cast<std::size_t>(k) + 1)
      throw FormatError("record digest width does not match k");
  }

  std::vector<std::uint8_t> out;
  out.reserve(16 + lang_spec.size() + records.size() * (10 + (k + 1 + 7) / 8));
  out.insert(out.end(), std::begin(kArchiveMagic), std::end(kArchiveMagic));
  out.push_back(kArchiveVersion);
  detail::put_u16(out, n);
  detail::put_u16(out, k);
  detail::put_u16(out, static_cast<std::uint16_t>(lang_spec.size()));
  out.insert(out.end(), lang_spec.begin(), lang_spec.end());
  detail::put_u32(out, static_cast<std::uint32_t>(records.size()));
  for (const auto& r : records) {
    detail::put_u64(out, r.seed);
    detail::put_u16(out, r.index);
    const auto digest = r.digest.to_bytes();
    out.insert(out.end(), digest.begin(), digest.end());
  }
  return out;
}

inline Archive parse_archive(std::span<const std::uint8_t> bytes) {
  detail::ByteReader in(bytes);
  const auto magic = in.take(4, "magic");
  for (int i = 0; i < 4; ++i)
    if (magic[static_cast<std::size_t>(i)] !=
        static_cast<std::uint8_t>(kArchiveMagic[i]))
      throw FormatError("bad archive magic");
  const auto version = in.take(1, "version")[0];
  if (version != kArchiveVersion)
    throw FormatError("unsupported archive version " + std::to_string(version));

  Archive a;
  a.n = in.u16("header");
  a.k = in.u16("header");
  if (static_cast<std::size_t>(a.k) + 1 > a.n)
    throw FormatError("archive header violates k+1 <= n");
  const auto spec_len = in.u16("header");
  const auto spec = in.take(spec_len, "language spec");
  a.lang_spec.assign(spec.begin(), spec.end());
  const auto count = in.u32("record count");

  const std::size_t digest_bytes = (static_cast<std::size_t>(a.k) + 1 + 7) / 8;
  a.records.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    CompressedRecord r;
    r.n = a.n;
    r.k = a.k;
    r.seed = in.u64("record");
    r.index = in.u16("record");
    if (r.index < 1 || r.index > a.k + 1)
      throw FormatError("record index outside [1, k+1]");
    r.digest = BitString::from_bytes(static_cast<std::size_t>(a.k) + 1,
                                     in.take(digest_bytes, "record digest"));
    a.records.push_back(std::move(r));
  }
  if (!in.exhausted()) throw FormatError("trailing bytes after last record");
  return a;
}

inline void write_archive(std::ostream& out, std::uint16_t n, std::uint16_t k,
                          std::string_view lang_spec,
                          std::span<const CompressedRecord> records) {
  const auto bytes = serialize_archive(n, k, lang_spec, records);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("failed to write archive stream");
}

inline Archive read_archive(std::istream& in) {
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_archive(bytes);
}

inline void write_archive_file(const std::string& path, std::uint16_t n,
                               std::uint16_t k, std::string_view lang_spec,
                               std::span<const CompressedRecord> records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open archive for writing: " + path);
  write_archive(out, n, k, lang_spec, records);
}

inline Archive read_archive_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open archive: " + path);
  return read_archive(in);
}

}  // namespace ilc
