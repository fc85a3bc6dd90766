#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sponge {

enum class ErrorKind {
  InvalidBases,
  DecreasingBases,
  EmptyOrSingletonDigits,
  DimensionMismatch,
  DigitOutOfRange,
  DuplicateDigit,
  DegenerateCoordinate,
  PrefixNotInSponge,
  OutOfRange,
  NonStrictBases,
  WordTooShort,
  InvalidWord,
  ScaleOrder,
  EnumerationTooLarge,
  ZeroMeasure,
  InvalidMeasure,
  VsscNotSatisfied,
  Unsupported,
  ParseError,
};

std::string_view error_name(ErrorKind kind);

// Every domain failure surfaces as a SpongeError; the CLI prints the kind
// name verbatim and exits with status 1.
class SpongeError : public std::runtime_error {
 public:
  SpongeError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace sponge
