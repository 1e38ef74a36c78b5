#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slopelab {

enum class ErrorKind {
  EmptyMultiset,
  IntervalMismatch,
  DivisionByZero,
  PrecisionExhausted,
  SingularFrobenius,
  NotLowestTerms,
  NotStrictlyDecreasing,
  NotDiagonal,
  SizeMismatch,
  NotSplit,
  ContextMismatch,
  NotInvertibleAtPrecision,
  ZeroPolynomial,
  OutsideUnitDisk,
  EvenPrime,
  SingularCurve,
  ExcludedPoint,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Domain error raised by every module. `module` names the library module
/// that raised it ("np_calculus", "padic_arith", ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, const std::string& message)
      : std::runtime_error(message), kind_(kind), module_(std::move(module)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }

 private:
  ErrorKind kind_;
  std::string module_;
};

}  // namespace slopelab
