// Exception taxonomy shared across the library. Every error carries a stable
// kind string that the CLI prints verbatim, so scripts and tests can match on
// the name alone.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ilc {

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  // Stable machine-readable name, e.g. "DimensionError".
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& m) : Error("DimensionError", m) {}
};

struct EmptyLanguage : Error {
  explicit EmptyLanguage(const std::string& m) : Error("EmptyLanguage", m) {}
};

struct DigestTooWide : Error {
  explicit DigestTooWide(const std::string& m) : Error("DigestTooWide", m) {}
};

struct EnumerationUnsupported : Error {
  explicit EnumerationUnsupported(const std::string& m)
      : Error("EnumerationUnsupported", m) {}
};

struct IngestError : Error {
  explicit IngestError(const std::string& m) : Error("IngestError", m) {}
};

struct NotInLanguage : Error {
  explicit NotInLanguage(const std::string& m) : Error("NotInLanguage", m) {}
};

struct SeedSpaceExhausted : Error {
  explicit SeedSpaceExhausted(const std::string& m)
      : Error("SeedSpaceExhausted", m) {}
};

struct CorruptRecord : Error {
  explicit CorruptRecord(const std::string& m) : Error("CorruptRecord", m) {}
};

struct AmbiguousRecord : Error {
  explicit AmbiguousRecord(const std::string& m)
      : Error("AmbiguousRecord", m) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& m) : Error("FormatError", m) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error("ConfigError", m) {}
};

}  // namespace ilc
