#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace slopelab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "n", "-n" or "n/d" (whitespace-free). Throws Error(ParseError).
Rational parse_rational(std::string_view text);

/// Canonical text form: "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// p-adic valuation of a nonzero integer.
long padic_valuation(const Integer& n, long p);

/// p-adic valuation of a nonzero rational.
long padic_valuation(const Rational& q, long p);

bool is_prime(long n);

}  // namespace slopelab
