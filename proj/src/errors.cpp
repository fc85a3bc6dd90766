#include "sponge/errors.hpp"

namespace sponge {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidBases: return "InvalidBases";
    case ErrorKind::DecreasingBases: return "DecreasingBases";
    case ErrorKind::EmptyOrSingletonDigits: return "EmptyOrSingletonDigits";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorKind::DuplicateDigit: return "DuplicateDigit";
    case ErrorKind::DegenerateCoordinate: return "DegenerateCoordinate";
    case ErrorKind::PrefixNotInSponge: return "PrefixNotInSponge";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NonStrictBases: return "NonStrictBases";
    case ErrorKind::WordTooShort: return "WordTooShort";
    case ErrorKind::InvalidWord: return "InvalidWord";
    case ErrorKind::ScaleOrder: return "ScaleOrder";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::ZeroMeasure: return "ZeroMeasure";
    case ErrorKind::InvalidMeasure: return "InvalidMeasure";
    case ErrorKind::VsscNotSatisfied: return "VsscNotSatisfied";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace sponge
