#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace afd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands with different truncation orders or vector lengths.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Parameters outside the open disc, non-real input where a real signal is required, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Zero remainder handed to a selector.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical invariant the algorithm relies on did not hold (e.g. the
/// backward shift produced negative-frequency energy).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class IngestionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(what + " (at byte " + std::to_string(byte_offset) + ")"), offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

}  // namespace afd
