#pragma once

#include <optional>
#include <string>

#include "slopelab/rational.hpp"

namespace slopelab {

/// Default relative precision in p-adic digits.
inline constexpr long kDefaultPrecision = 32;

/// Finite-precision element of Q_p: p^val * unit with unit known modulo
/// p^prec. Zero carries the absolute precision it is known to (O(p^val)),
/// or is exact.
///
/// Precision follows the absolute-precision model: sums keep the smaller
/// absolute precision, products keep the smaller relative precision. A
/// result never claims digits its inputs do not determine.
class PadicNumber {
 public:
  /// Exact zero for the prime p.
  explicit PadicNumber(long p = 2);

  static PadicNumber from_integer(long p, const Integer& n, long prec = kDefaultPrecision);
  static PadicNumber from_rational(long p, const Rational& q, long prec = kDefaultPrecision);
  /// p^k with the given relative precision.
  static PadicNumber power_of_p(long p, long k, long prec = kDefaultPrecision);
  /// Zero known modulo p^abs_prec.
  static PadicNumber zero_mod(long p, long abs_prec);
  /// p^val * unit, unit reduced modulo p^prec. `unit` must be prime to p.
  static PadicNumber from_parts(long p, long val, const Integer& unit, long prec);

  long prime() const noexcept { return p_; }
  bool is_zero() const noexcept { return unit_ == 0; }
  bool is_exact_zero() const noexcept { return is_zero() && val_ == kExact; }

  /// Valuation of a nonzero element.
  long valuation() const;
  /// Relative precision (0 for zero).
  long relative_precision() const noexcept { return prec_; }
  /// Digits known in absolute terms: val + prec, or the zero bound.
  long absolute_precision() const noexcept { return is_zero() ? val_ : val_ + prec_; }
  const Integer& unit() const noexcept { return unit_; }

  PadicNumber operator-() const;
  PadicNumber& operator+=(const PadicNumber& o);
  PadicNumber& operator-=(const PadicNumber& o);
  PadicNumber& operator*=(const PadicNumber& o);

  friend PadicNumber operator+(PadicNumber a, const PadicNumber& b) { return a += b; }
  friend PadicNumber operator-(PadicNumber a, const PadicNumber& b) { return a -= b; }
  friend PadicNumber operator*(PadicNumber a, const PadicNumber& b) { return a *= b; }

  /// Exact multiplication by an integer; no precision is lost.
  PadicNumber times_integer(const Integer& c) const;
  /// Exact multiplication by p^k.
  PadicNumber shifted(long k) const;

  /// Throws DivisionByZero for exact zero, PrecisionExhausted for O(p^k).
  PadicNumber inverse() const;

  /// Drops digits beyond the given absolute precision.
  PadicNumber with_absolute_precision(long abs_prec) const;

  /// Equal up to the precision of both operands.
  bool equals_to_precision(const PadicNumber& o) const { return (*this - o).is_zero(); }

  /// Canonical rational representative p^val * unit.
  Rational to_rational() const;

  /// Reduction modulo p of an element of Z_p (val >= 0).
  long residue() const;

  std::string to_string() const;

  static constexpr long kExact = 1L << 40;

 private:
  PadicNumber(long p, long val, Integer unit, long prec)
      : p_(p), val_(val), unit_(std::move(unit)), prec_(prec) {}

  long p_;
  long val_;
  Integer unit_;
  long prec_;
};

/// p^k as an integer, memoized per thread.
const Integer& prime_power(long p, long k);

}  // namespace slopelab
