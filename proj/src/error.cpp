#include "slopelab/error.hpp"

namespace slopelab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyMultiset: return "EmptyMultiset";
    case ErrorKind::IntervalMismatch: return "IntervalMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::SingularFrobenius: return "SingularFrobenius";
    case ErrorKind::NotLowestTerms: return "NotLowestTerms";
    case ErrorKind::NotStrictlyDecreasing: return "NotStrictlyDecreasing";
    case ErrorKind::NotDiagonal: return "NotDiagonal";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::NotInvertibleAtPrecision: return "NotInvertibleAtPrecision";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::OutsideUnitDisk: return "OutsideUnitDisk";
    case ErrorKind::EvenPrime: return "EvenPrime";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::ExcludedPoint: return "ExcludedPoint";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace slopelab
